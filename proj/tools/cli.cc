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

#include "cli.h"

#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "matchmap/error.h"
#include "matchmap/estimators.h"
#include "matchmap/gen_model.h"
#include "matchmap/harness.h"
#include "matchmap/io.h"
#include "matchmap/separation.h"

namespace matchmap::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct MatchArgs {
  std::string x_file;
  std::string xsharp_file;
  std::string method;
  std::string sigma_file;
  std::string sigma_sharp_file;
  std::string out;
};

struct GenerateArgs {
  std::string spec;
  std::size_t n = 0;
  std::optional<std::size_t> m;
  std::size_t d = 0;
  std::optional<double> a;
  std::optional<double> b;
  Seed seed = 0;
  std::string out;
};

struct SeparationArgs {
  std::string params_file;
  double alpha = 0.05;
  std::string out;
};

struct EvaluateArgs {
  std::string mapping_file;
  std::string truth_file;
};

struct ExperimentArgs {
  std::string config_file;
  std::string out_dir;
  std::string format = "csv";
};

int CmdMatch(const MatchArgs& args, std::ostream& out) {
  const auto method = ParseMethod(args.method);
  if (!method) throw InvalidInput("unknown method '" + args.method + "'");
  const bool has_sigma = !args.sigma_file.empty();
  const bool has_sigma_sharp = !args.sigma_sharp_file.empty();
  if (*method == Method::kLsns && !(has_sigma && has_sigma_sharp)) {
    std::string missing = !has_sigma && !has_sigma_sharp
                              ? "--sigma and --sigma-sharp"
                              : (has_sigma ? "--sigma-sharp" : "--sigma");
    throw InvalidInput("method lsns requires noise levels; missing " + missing);
  }
  if (has_sigma != has_sigma_sharp) {
    throw InvalidInput("--sigma and --sigma-sharp must be given together");
  }
  std::optional<std::vector<double>> sigma;
  std::optional<std::vector<double>> sigma_sharp;
  if (has_sigma) {
    sigma = ParseScalarCsv(ReadFile(args.sigma_file));
    sigma_sharp = ParseScalarCsv(ReadFile(args.sigma_sharp_file));
  }
  const Dataset data(ParseVectorCsv(ReadFile(args.x_file)),
                     ParseVectorCsv(ReadFile(args.xsharp_file)),
                     std::move(sigma), std::move(sigma_sharp));
  const MatchingMap estimate = Estimate(*method, data);
  WriteFile(args.out, MappingCsv(estimate.assignment));
  out << FormatDouble(estimate.objective) << '\n';
  return kOk;
}

int CmdGenerate(const GenerateArgs& args, std::ostream& out,
                std::ostream& err) {
  std::optional<InstanceParams> params;
  if (args.spec == "exp1" || args.spec == "exp2") {
    if (!args.m) throw InvalidInput("--m is required for spec " + args.spec);
    if (args.spec == "exp1") {
      if (args.a || args.b) throw InvalidInput("--a/--b only apply to exp2");
      params = Experiment1Instance(args.n, *args.m, args.d, args.seed);
    } else {
      if (!args.a || !args.b) throw InvalidInput("spec exp2 requires --a and --b");
      params = Experiment2Instance(args.n, *args.m, args.d, *args.a, *args.b);
    }
  } else if (args.spec == "counterexample") {
    if (args.m && *args.m != args.n + 1) {
      throw InvalidInput("counterexample requires m = n + 1");
    }
    if (args.a || args.b) throw InvalidInput("--a/--b only apply to exp2");
    params = CounterexampleInstance(args.n, args.d);
    if (!CounterexampleHypothesisHolds(args.n, args.d)) {
      err << json{{"warning", "d is below 422 log(4n); the counterexample "
                              "failure guarantee does not apply"}}
                 .dump()
          << '\n';
    }
  } else {
    throw InvalidInput("unknown spec '" + args.spec +
                       "' (expected exp1, exp2 or counterexample)");
  }

  // The instance seed drives exp1's features; the data uses its own stream.
  const Dataset data = SampleDataset(*params, DeriveSeed(args.seed, 1));
  const std::string prefix = args.out;
  const json files = {
      {"x", prefix + "_x.csv"},
      {"xsharp", prefix + "_xsharp.csv"},
      {"sigma", prefix + "_sigma.csv"},
      {"sigma_sharp", prefix + "_sigma_sharp.csv"},
      {"pi_star", prefix + "_pi_star.csv"},
      {"params", prefix + "_params.json"},
  };
  WriteFile(files["x"].get<std::string>(), VectorCsv(data.x()));
  WriteFile(files["xsharp"].get<std::string>(), VectorCsv(data.x_sharp()));
  WriteFile(files["sigma"].get<std::string>(), ScalarCsv(*data.sigma()));
  WriteFile(files["sigma_sharp"].get<std::string>(),
            ScalarCsv(*data.sigma_sharp()));
  WriteFile(files["pi_star"].get<std::string>(), MappingCsv(params->pi_star()));
  WriteFile(files["params"].get<std::string>(), InstanceParamsToJson(*params));
  out << json{{"files", files}}.dump() << '\n';
  return kOk;
}

int CmdSeparation(const SeparationArgs& args, std::ostream& out) {
  if (!(args.alpha > 0.0 && args.alpha < 1.0)) {
    throw InvalidInput("--alpha must lie in (0, 1)");
  }
  const InstanceParams params =
      InstanceParamsFromJson(ReadFile(args.params_file));
  const std::string doc = SeparationDocument(params, args.alpha);
  if (!args.out.empty()) WriteFile(args.out, doc);
  out << doc;
  return kOk;
}

int CmdEvaluate(const EvaluateArgs& args, std::ostream& out) {
  const auto estimate = ParseMappingCsv(ReadFile(args.mapping_file));
  const auto truth = ParseMappingCsv(ReadFile(args.truth_file));
  if (estimate.size() != truth.size()) {
    throw InvalidInput("mapping has n = " + std::to_string(estimate.size()) +
                       " but truth has n = " + std::to_string(truth.size()));
  }
  const std::size_t loss = HammingLoss(estimate, truth);
  out << json{{"n", truth.size()},
              {"hamming_loss", loss},
              {"normalized_loss",
               static_cast<double>(loss) / static_cast<double>(truth.size())},
              {"exact_match", loss == 0}}
             .dump()
      << '\n';
  return kOk;
}

int CmdExperiment(const ExperimentArgs& args, std::ostream& out,
                  std::ostream& err) {
  if (args.format != "csv" && args.format != "pgm" && args.format != "json") {
    throw InvalidInput("--format must be csv, pgm or json");
  }
  const ExperimentConfig config =
      ParseExperimentConfig(ReadFile(args.config_file));
  const TrialConfig& trial = config.trial;
  if (std::holds_alternative<CounterexampleSpec>(trial.instance) &&
      !CounterexampleHypothesisHolds(trial.n, trial.d)) {
    err << json{{"warning", "d is below 422 log(4n); the counterexample "
                            "failure guarantee does not apply"}}
               .dump()
        << '\n';
  }
  const fs::path dir(args.out_dir);
  fs::create_directories(dir);
  json written = json::array();
  auto write = [&](const std::string& name, const std::string& contents) {
    WriteFile(dir / name, contents);
    written.push_back((dir / name).string());
  };

  if (!config.has_grid()) {
    const TrialReport report = RunTrials(trial);
    write("report.json", TrialReportToJson(report, config));
  } else {
    const Heatmap map =
        DetectionHeatmap(trial, *config.a_grid, *config.b_grid);
    write("heatmap.json", HeatmapToJson(map));
    for (std::size_t k = 0; k < map.methods.size(); ++k) {
      const std::string stem =
          "heatmap_" + std::string(MethodName(map.methods[k]));
      if (args.format == "csv") write(stem + ".csv", HeatmapCsv(map, k));
      if (args.format == "pgm") write(stem + ".pgm", HeatmapPgm(map, k));
    }
    write("config.json", ExperimentConfigToJson(config));
  }
  out << json{{"files", written}}.dump() << '\n';
  return kOk;
}

void ReportError(std::ostream& err, const std::string& command,
                 const std::string& kind, const std::string& message) {
  err << json{{"error", message}, {"kind", kind}, {"command", command}}.dump()
      << '\n';
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Feature matching map estimation toolkit", "matchmap"};
  app.require_subcommand(1);

  MatchArgs match;
  auto* match_cmd = app.add_subcommand("match", "Estimate a matching map");
  match_cmd->add_option("--x", match.x_file, "Vector file X (n rows)")->required();
  match_cmd->add_option("--xsharp", match.xsharp_file, "Vector file X# (m rows)")
      ->required();
  match_cmd->add_option("--method", match.method, "greedy|lss|lsns|lsl")
      ->required();
  match_cmd->add_option("--sigma", match.sigma_file, "Noise levels of X");
  match_cmd->add_option("--sigma-sharp", match.sigma_sharp_file,
                        "Noise levels of X#");
  match_cmd->add_option("--out", match.out, "Mapping file to write")->required();

  GenerateArgs gen;
  auto* gen_cmd = app.add_subcommand("generate", "Generate a synthetic dataset");
  gen_cmd->add_option("--spec", gen.spec, "exp1|exp2|counterexample")->required();
  gen_cmd->add_option("--n", gen.n, "Size of X")->required();
  gen_cmd->add_option("--m", gen.m, "Size of X#");
  gen_cmd->add_option("--d", gen.d, "Dimension")->required();
  gen_cmd->add_option("--a", gen.a, "exp2 inlier spacing");
  gen_cmd->add_option("--b", gen.b, "exp2 outlier spacing");
  gen_cmd->add_option("--seed", gen.seed, "Seed (u64)");
  gen_cmd->add_option("--out", gen.out, "Output file prefix")->required();

  SeparationArgs sep;
  auto* sep_cmd =
      app.add_subcommand("separation", "Separation distances and thresholds");
  sep_cmd->add_option("--params", sep.params_file, "Instance params JSON")
      ->required();
  sep_cmd->add_option("--alpha", sep.alpha, "Confidence level");
  sep_cmd->add_option("--out", sep.out, "Also write the JSON here");

  EvaluateArgs eval;
  auto* eval_cmd =
      app.add_subcommand("evaluate", "Hamming loss against a true mapping");
  eval_cmd->add_option("--mapping", eval.mapping_file, "Estimated mapping")
      ->required();
  eval_cmd->add_option("--truth", eval.truth_file, "True mapping")->required();

  ExperimentArgs exp;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a Monte-Carlo experiment");
  exp_cmd->add_option("--config", exp.config_file, "Experiment JSON")->required();
  exp_cmd->add_option("--out", exp.out_dir, "Output directory")->required();
  exp_cmd->add_option("--format", exp.format, "Heatmap format: csv|pgm|json");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::string command = args.size() > 1 ? args[1] : "";
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    ReportError(err, command, "usage", e.what());
    return kInvalidInput;
  }

  try {
    if (*match_cmd) return CmdMatch(match, out);
    if (*gen_cmd) return CmdGenerate(gen, out, err);
    if (*sep_cmd) return CmdSeparation(sep, out);
    if (*eval_cmd) return CmdEvaluate(eval, out);
    if (*exp_cmd) return CmdExperiment(exp, out, err);
  } catch (const ConfigError& e) {
    ReportError(err, command, "config", e.what());
    return kInvalidInput;
  } catch (const InvalidInput& e) {
    ReportError(err, command, "invalid_input", e.what());
    return kInvalidInput;
  } catch (const std::exception& e) {
    ReportError(err, command, "runtime", e.what());
    return kRuntimeFailure;
  }
  return kInvalidInput;
}

}  // namespace matchmap::cli
