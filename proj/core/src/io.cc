// Copyright 2026 The matchmap Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "matchmap/io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <iterator>
#include <set>
#include <sstream>
#include <system_error>

#include "json.hpp"
#include "matchmap/error.h"

namespace matchmap {

using nlohmann::json;

std::string FormatDouble(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

double ParseDouble(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
    text.remove_prefix(1);
  }
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) {
    text.remove_suffix(1);
  }
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto result = std::from_chars(text.data(), end, value);
  if (text.empty() || result.ec != std::errc() || result.ptr != end) {
    throw InvalidInput("cannot parse number '" + std::string(text) + "'");
  }
  if (!std::isfinite(value)) {
    throw InvalidInput("non-finite number '" + std::string(text) + "'");
  }
  return value;
}

namespace {

// Splits into lines, dropping a single trailing empty line and any '\r'.
std::vector<std::string_view> SplitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string LineContext(std::size_t line) {
  return "line " + std::to_string(line + 1) + ": ";
}

}  // namespace

VectorSet ParseVectorCsv(std::string_view text) {
  const auto lines = SplitLines(text);
  if (lines.empty()) throw InvalidInput("vector file is empty");
  std::vector<double> data;
  std::size_t dim = 0;
  for (std::size_t l = 0; l < lines.size(); ++l) {
    if (lines[l].empty()) throw InvalidInput(LineContext(l) + "empty line");
    const auto fields = SplitFields(lines[l]);
    if (l == 0) dim = fields.size();
    if (fields.size() != dim) {
      throw InvalidInput(LineContext(l) + "expected " + std::to_string(dim) +
                         " fields, found " + std::to_string(fields.size()));
    }
    for (auto f : fields) {
      try {
        data.push_back(ParseDouble(f));
      } catch (const InvalidInput& e) {
        throw InvalidInput(LineContext(l) + e.what());
      }
    }
  }
  return VectorSet(lines.size(), dim, std::move(data));
}

std::string VectorCsv(const VectorSet& vectors) {
  std::string out;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const auto row = vectors[i];
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k > 0) out += ',';
      out += FormatDouble(row[k]);
    }
    out += '\n';
  }
  return out;
}

std::vector<double> ParseScalarCsv(std::string_view text) {
  const VectorSet set = ParseVectorCsv(text);
  if (set.dim() != 1) throw InvalidInput("noise-level file must have one column");
  return set.data();
}

std::string ScalarCsv(const std::vector<double>& values) {
  return VectorCsv(VectorSet(values.size(), 1, values));
}

namespace {

std::size_t ParseIndex(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  std::size_t value = 0;
  const char* end = text.data() + text.size();
  const auto result = std::from_chars(text.data(), end, value);
  if (text.empty() || result.ec != std::errc() || result.ptr != end) {
    throw InvalidInput("cannot parse index '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::vector<std::size_t> ParseMappingCsv(std::string_view text) {
  auto lines = SplitLines(text);
  std::size_t first = 0;
  if (!lines.empty() && lines.front() == "i,j") first = 1;
  const std::size_t n = lines.size() - first;
  if (n == 0) throw InvalidInput("mapping file is empty");
  std::vector<std::size_t> assignment(n);
  std::vector<bool> seen_i(n, false);
  std::set<std::size_t> seen_j;
  for (std::size_t l = first; l < lines.size(); ++l) {
    const auto fields = SplitFields(lines[l]);
    if (fields.size() != 2) {
      throw InvalidInput(LineContext(l) + "mapping lines must be 'i,j'");
    }
    std::size_t i = 0;
    std::size_t j = 0;
    try {
      i = ParseIndex(fields[0]);
      j = ParseIndex(fields[1]);
    } catch (const InvalidInput& e) {
      throw InvalidInput(LineContext(l) + e.what());
    }
    if (i < 1 || i > n || seen_i[i - 1]) {
      throw InvalidInput(LineContext(l) + "i values must be exactly 1.." +
                         std::to_string(n));
    }
    if (j < 1) throw InvalidInput(LineContext(l) + "j values are 1-based");
    if (!seen_j.insert(j).second) {
      throw InvalidInput(LineContext(l) + "j = " + std::to_string(j) +
                         " repeats; the mapping is not injective");
    }
    seen_i[i - 1] = true;
    assignment[i - 1] = j - 1;
  }
  return assignment;
}

std::string MappingCsv(const std::vector<std::size_t>& assignment) {
  std::string out;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    out += std::to_string(i + 1) + ',' + std::to_string(assignment[i] + 1) + '\n';
  }
  return out;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path.string() + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void WriteFile(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot write '" + path.string() + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw InvalidInput("failed writing '" + path.string() + "'");
}

namespace {

json ParseJson(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
}

void CheckKeys(const json& obj, std::initializer_list<std::string_view> allowed,
               const std::string& context) {
  if (!obj.is_object()) throw ConfigError(context + " must be a JSON object");
  for (const auto& item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      throw ConfigError(context + ": unknown field '" + item.key() + "'");
    }
  }
}

template <typename T>
T Get(const json& obj, const char* key, const std::string& context) {
  if (!obj.contains(key)) {
    throw ConfigError(context + ": missing field '" + key + "'");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(context + ": field '" + key + "' has the wrong type");
  }
}

std::uint64_t GetUnsigned(const json& obj, const char* key,
                          const std::string& context) {
  if (!obj.contains(key)) {
    throw ConfigError(context + ": missing field '" + key + "'");
  }
  const json& v = obj.at(key);
  if (!v.is_number_unsigned()) {
    throw ConfigError(context + ": field '" + key +
                      "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::size_t GetCount(const json& obj, const char* key,
                     const std::string& context) {
  return static_cast<std::size_t>(GetUnsigned(obj, key, context));
}

json OptionalNumber(const std::optional<double>& value) {
  return value ? json(*value) : json(nullptr);
}

json ParamsJson(const InstanceParams& params) {
  json theta = json::array();
  for (std::size_t j = 0; j < params.m(); ++j) {
    const auto row = params.theta_sharp()[j];
    theta.push_back(std::vector<double>(row.begin(), row.end()));
  }
  std::vector<std::size_t> pi;
  for (std::size_t j : params.pi_star()) pi.push_back(j + 1);
  return {{"n", params.n()},         {"m", params.m()},
          {"d", params.dim()},       {"theta_sharp", theta},
          {"sigma_sharp", params.sigma_sharp()}, {"pi_star", pi}};
}

InstanceParams ParamsFromJson(const json& doc) {
  const std::string ctx = "instance params";
  CheckKeys(doc, {"n", "m", "d", "theta_sharp", "sigma_sharp", "pi_star"}, ctx);
  const auto theta =
      Get<std::vector<std::vector<double>>>(doc, "theta_sharp", ctx);
  const auto sigma = Get<std::vector<double>>(doc, "sigma_sharp", ctx);
  auto pi = Get<std::vector<std::size_t>>(doc, "pi_star", ctx);
  for (auto& j : pi) {
    if (j < 1) throw ConfigError(ctx + ": pi_star is 1-based");
    --j;
  }
  InstanceParams params(VectorSet::FromRows(theta), sigma, std::move(pi));
  if (doc.contains("n") && GetCount(doc, "n", ctx) != params.n()) {
    throw ConfigError(ctx + ": n does not match pi_star length");
  }
  if (doc.contains("m") && GetCount(doc, "m", ctx) != params.m()) {
    throw ConfigError(ctx + ": m does not match theta_sharp length");
  }
  if (doc.contains("d") && GetCount(doc, "d", ctx) != params.dim()) {
    throw ConfigError(ctx + ": d does not match theta_sharp width");
  }
  return params;
}

json ThresholdsJson(const Thresholds& t, const SeparationReport& s) {
  return {{"t_in_in", t.t_in_in},
          {"t_in_out", t.t_in_out},
          {"alpha", t.alpha},
          {"regime", RegimeName(t.regime)},
          {"detected", t.Contains(s)}};
}

json SeparationJson(const SeparationReport& s) {
  return {{"kappa_in_in", OptionalNumber(s.kappa_in_in)},
          {"kappa_in_out", OptionalNumber(s.kappa_in_out)}};
}

}  // namespace

std::string InstanceParamsToJson(const InstanceParams& params, int indent) {
  return ParamsJson(params).dump(indent) + "\n";
}

InstanceParams InstanceParamsFromJson(std::string_view text) {
  return ParamsFromJson(ParseJson(text, "instance params"));
}

std::string SeparationDocument(const InstanceParams& params, double alpha) {
  const SeparationReport sep = ComputeSeparation(params);
  const double r_sigma = NoiseRatio(params);
  const std::size_t n = params.n();
  const std::size_t m = params.m();
  const std::size_t d = params.dim();
  json doc = {{"n", n},
              {"m", m},
              {"d", d},
              {"alpha", alpha},
              {"r_sigma", r_sigma},
              {"separation", SeparationJson(sep)}};
  json thresholds;
  thresholds["lsns"] = ThresholdsJson(ThresholdsLsns(n, m, d, alpha), sep);
  thresholds["lsl"] = alpha < 0.5
                          ? ThresholdsJson(ThresholdsLsl(n, m, d, alpha), sep)
                          : json(nullptr);
  thresholds["mild"] =
      ThresholdsJson(ThresholdMild(n, m, d, alpha, r_sigma), sep);
  doc["thresholds"] = thresholds;
  return doc.dump(2) + "\n";
}

namespace {

std::vector<double> ParseGrid(const json& grid, const char* key) {
  const std::string ctx = "grid";
  auto values = Get<std::vector<double>>(grid, key, ctx);
  if (values.empty()) throw ConfigError(ctx + "." + key + " must not be empty");
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (!(values[k] > values[k - 1])) {
      throw ConfigError(ctx + "." + key + " must be strictly increasing");
    }
  }
  return values;
}

}  // namespace

ExperimentConfig ParseExperimentConfig(std::string_view text) {
  const json doc = ParseJson(text, "experiment config");
  const std::string ctx = "config";
  CheckKeys(doc,
            {"instance", "methods", "n", "m", "d", "reps", "alpha",
             "master_seed", "grid"},
            ctx);
  ExperimentConfig config;
  TrialConfig& trial = config.trial;
  const bool has_grid = doc.contains("grid");

  if (!doc.contains("instance")) throw ConfigError(ctx + ": missing field 'instance'");
  const json& inst = doc.at("instance");
  CheckKeys(inst, {"kind", "a", "b", "params"}, "instance");
  const auto kind = Get<std::string>(inst, "kind", "instance");

  trial.n = GetCount(doc, "n", ctx);
  trial.d = GetCount(doc, "d", ctx);
  trial.reps = GetCount(doc, "reps", ctx);
  if (doc.contains("m")) {
    trial.m = GetCount(doc, "m", ctx);
  } else if (kind == "counterexample") {
    trial.m = trial.n + 1;
  } else {
    throw ConfigError(ctx + ": missing field 'm'");
  }
  if (doc.contains("alpha")) trial.alpha = Get<double>(doc, "alpha", ctx);
  if (doc.contains("master_seed")) {
    trial.master_seed = GetUnsigned(doc, "master_seed", ctx);
  }

  auto reject = [&](const char* key) {
    if (inst.contains(key)) {
      throw ConfigError("instance: field '" + std::string(key) +
                        "' is not valid for kind '" + kind + "'");
    }
  };
  if (kind == "exp1") {
    reject("a"), reject("b"), reject("params");
    trial.instance = Experiment1Spec{};
  } else if (kind == "exp2") {
    reject("params");
    Experiment2Spec spec;
    if (!has_grid || inst.contains("a") || inst.contains("b")) {
      spec.a = Get<double>(inst, "a", "instance");
      spec.b = Get<double>(inst, "b", "instance");
    } else {
      // Placeholder; every grid cell overrides it.
      spec = {1.0, 1.0};
    }
    trial.instance = spec;
  } else if (kind == "counterexample") {
    reject("a"), reject("b"), reject("params");
    trial.instance = CounterexampleSpec{};
  } else if (kind == "explicit") {
    reject("a"), reject("b");
    if (!inst.contains("params")) throw ConfigError("instance: missing field 'params'");
    try {
      trial.instance = ExplicitSpec{ParamsFromJson(inst.at("params"))};
    } catch (const ConfigError&) {
      throw;
    } catch (const InvalidInput& e) {
      throw ConfigError(std::string("instance params: ") + e.what());
    }
  } else {
    throw ConfigError("instance: unknown kind '" + kind +
                      "' (expected exp1, exp2, counterexample or explicit)");
  }

  const auto names = Get<std::vector<std::string>>(doc, "methods", ctx);
  for (const auto& name : names) {
    const auto method = ParseMethod(name);
    if (!method) throw ConfigError(ctx + ": unknown method '" + name + "'");
    if (std::find(trial.methods.begin(), trial.methods.end(), *method) !=
        trial.methods.end()) {
      throw ConfigError(ctx + ": method '" + name + "' listed twice");
    }
    trial.methods.push_back(*method);
  }

  if (has_grid) {
    if (kind != "exp2") throw ConfigError("grid requires instance kind 'exp2'");
    const json& grid = doc.at("grid");
    CheckKeys(grid, {"a", "b"}, "grid");
    config.a_grid = ParseGrid(grid, "a");
    config.b_grid = ParseGrid(grid, "b");
  }
  ValidateConfig(trial);
  return config;
}

namespace {

json ConfigJson(const ExperimentConfig& config) {
  const TrialConfig& t = config.trial;
  json inst = std::visit(
      [&](const auto& spec) -> json {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, Experiment1Spec>) {
          return {{"kind", "exp1"}};
        } else if constexpr (std::is_same_v<T, Experiment2Spec>) {
          if (config.has_grid()) return {{"kind", "exp2"}};
          return {{"kind", "exp2"}, {"a", spec.a}, {"b", spec.b}};
        } else if constexpr (std::is_same_v<T, CounterexampleSpec>) {
          return {{"kind", "counterexample"}};
        } else {
          return {{"kind", "explicit"}, {"params", ParamsJson(spec.params)}};
        }
      },
      t.instance);
  json methods = json::array();
  for (Method m : t.methods) methods.push_back(MethodName(m));
  json doc = {{"instance", inst}, {"methods", methods}, {"n", t.n},
              {"m", t.m},         {"d", t.d},           {"reps", t.reps},
              {"alpha", t.alpha}, {"master_seed", t.master_seed}};
  if (config.has_grid()) {
    doc["grid"] = {{"a", *config.a_grid}, {"b", *config.b_grid}};
  }
  return doc;
}

}  // namespace

std::string ExperimentConfigToJson(const ExperimentConfig& config) {
  return ConfigJson(config).dump(2) + "\n";
}

std::string TrialReportToJson(const TrialReport& report,
                              const ExperimentConfig& config) {
  json methods = json::array();
  for (const auto& s : report.methods) {
    methods.push_back({{"method", MethodName(s.method)},
                       {"error_count", s.error_count},
                       {"error_rate", s.error_rate},
                       {"wilson95", {s.wilson.lower, s.wilson.upper}},
                       {"mean_hamming", s.mean_hamming}});
  }
  json doc = {{"config", ConfigJson(config)},
              {"reps", report.reps},
              {"methods", methods}};
  if (IsRandomInstance(config.trial.instance)) {
    json reps = json::array();
    for (std::size_t r = 0; r < report.separations.size(); ++r) {
      json errors = json::object();
      json hamming = json::object();
      for (const auto& s : report.methods) {
        errors[std::string(MethodName(s.method))] = s.errors[r];
        hamming[std::string(MethodName(s.method))] = s.hamming[r];
      }
      json rec = SeparationJson(report.separations[r]);
      rec["errors"] = errors;
      rec["hamming"] = hamming;
      reps.push_back(rec);
    }
    doc["repetitions"] = reps;
  } else if (!report.separations.empty()) {
    doc["separation"] = SeparationJson(report.separations.front());
  }
  return doc.dump(2) + "\n";
}

std::string HeatmapToJson(const Heatmap& map) {
  json cells = json::object();
  for (std::size_t k = 0; k < map.methods.size(); ++k) {
    json rows = json::array();
    for (std::size_t ia = 0; ia < map.a_grid.size(); ++ia) {
      json row = json::array();
      for (std::size_t ib = 0; ib < map.b_grid.size(); ++ib) {
        row.push_back(map.At(k, ia, ib));
      }
      rows.push_back(row);
    }
    cells[std::string(MethodName(map.methods[k]))] = rows;
  }
  json doc = {{"a_grid", map.a_grid}, {"b_grid", map.b_grid}, {"error_rate", cells}};
  return doc.dump(2) + "\n";
}

std::string HeatmapCsv(const Heatmap& map, std::size_t method_index) {
  std::string out;
  for (double b : map.b_grid) out += ',' + FormatDouble(b);
  out += '\n';
  for (std::size_t ia = 0; ia < map.a_grid.size(); ++ia) {
    out += FormatDouble(map.a_grid[ia]);
    for (std::size_t ib = 0; ib < map.b_grid.size(); ++ib) {
      out += ',' + FormatDouble(map.At(method_index, ia, ib));
    }
    out += '\n';
  }
  return out;
}

std::string HeatmapPgm(const Heatmap& map, std::size_t method_index) {
  const std::size_t width = map.b_grid.size();
  const std::size_t height = map.a_grid.size();
  std::string out = "P5\n" + std::to_string(width) + " " +
                    std::to_string(height) + "\n255\n";
  for (std::size_t row = 0; row < height; ++row) {
    const std::size_t ia = height - 1 - row;
    for (std::size_t ib = 0; ib < width; ++ib) {
      const double rate = std::clamp(map.At(method_index, ia, ib), 0.0, 1.0);
      out += static_cast<char>(
          static_cast<unsigned char>(std::lround(rate * 255.0)));
    }
  }
  return out;
}

}  // namespace matchmap
