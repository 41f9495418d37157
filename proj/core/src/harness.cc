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

#include "matchmap/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "matchmap/error.h"

namespace matchmap {

namespace {

// Per-repetition stream layout under RepetitionSeed(master, r).
constexpr std::uint64_t kInstanceStream = 1;
constexpr std::uint64_t kNoiseStream = 2;

}  // namespace

bool IsRandomInstance(const InstanceSpec& spec) {
  return std::holds_alternative<Experiment1Spec>(spec);
}

void ValidateConfig(const TrialConfig& config) {
  if (config.reps == 0) throw ConfigError("reps must be >= 1");
  if (config.methods.empty()) throw ConfigError("methods must not be empty");
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw ConfigError("alpha must lie in (0, 1)");
  }
  if (config.n == 0 || config.d == 0) throw ConfigError("n and d must be >= 1");
  if (config.m < config.n) throw ConfigError("m must be >= n");
  std::visit(
      [&](const auto& spec) {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, Experiment1Spec>) {
          if (config.m == config.n) throw ConfigError("exp1 requires m > n");
        } else if constexpr (std::is_same_v<T, Experiment2Spec>) {
          if (config.m == config.n) throw ConfigError("exp2 requires m > n");
          if (!(spec.a > 0.0) || !(spec.b > 0.0)) {
            throw ConfigError("exp2 requires a > 0 and b > 0");
          }
        } else if constexpr (std::is_same_v<T, CounterexampleSpec>) {
          if (config.n < 2) throw ConfigError("counterexample requires n >= 2");
          if (config.m != config.n + 1) {
            throw ConfigError("counterexample requires m = n + 1");
          }
        } else {
          const auto& p = spec.params;
          if (p.n() != config.n || p.m() != config.m || p.dim() != config.d) {
            throw ConfigError("explicit params do not match n, m, d");
          }
        }
      },
      config.instance);
}

InstanceParams BuildInstance(const TrialConfig& config, Seed rep_seed) {
  return std::visit(
      [&](const auto& spec) -> InstanceParams {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, Experiment1Spec>) {
          return Experiment1Instance(config.n, config.m, config.d,
                                     DeriveSeed(rep_seed, kInstanceStream));
        } else if constexpr (std::is_same_v<T, Experiment2Spec>) {
          return Experiment2Instance(config.n, config.m, config.d, spec.a,
                                     spec.b);
        } else if constexpr (std::is_same_v<T, CounterexampleSpec>) {
          return CounterexampleInstance(config.n, config.d);
        } else {
          return spec.params;
        }
      },
      config.instance);
}

Seed RepetitionSeed(Seed master, std::size_t rep) {
  return DeriveSeed(master, static_cast<std::uint64_t>(rep));
}

ProportionInterval WilsonInterval(std::size_t successes, std::size_t trials,
                                  double z) {
  if (trials == 0) return {0.0, 1.0};
  const double nt = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / nt;
  const double z2 = z * z;
  const double center = (p + z2 / (2.0 * nt)) / (1.0 + z2 / nt);
  const double half =
      z * std::sqrt(p * (1.0 - p) / nt + z2 / (4.0 * nt * nt)) / (1.0 + z2 / nt);
  // The exact interval contains p; keep that true under rounding.
  return {successes == 0 ? 0.0 : std::clamp(center - half, 0.0, p),
          successes == trials ? 1.0 : std::clamp(center + half, p, 1.0)};
}

double WilsonHalfWidth(std::size_t successes, std::size_t trials, double z) {
  const auto ci = WilsonInterval(successes, trials, z);
  return 0.5 * (ci.upper - ci.lower);
}

const MethodSummary& TrialReport::For(Method method) const {
  for (const auto& s : methods) {
    if (s.method == method) return s;
  }
  throw std::out_of_range("method " + std::string(MethodName(method)) +
                          " not present in report");
}

std::size_t DefaultWorkerCount() {
  if (const char* env = std::getenv("MATCHMAP_THREADS")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) {
      return static_cast<std::size_t>(value);
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void ParallelFor(std::size_t count, std::size_t workers,
                 const std::function<void(std::size_t)>& fn) {
  if (workers == 0) workers = DefaultWorkerCount();
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < count && !failed; k = next++) {
          try {
            fn(k);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            failed = true;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

namespace {

struct RepetitionRecord {
  std::vector<std::uint8_t> errors;
  std::vector<std::size_t> hamming;
  std::optional<SeparationReport> separation;
};

}  // namespace

TrialReport RunTrials(const TrialConfig& config, std::size_t workers) {
  ValidateConfig(config);
  const bool random_instance = IsRandomInstance(config.instance);
  std::optional<InstanceParams> fixed;
  if (!random_instance) fixed = BuildInstance(config, config.master_seed);

  std::vector<RepetitionRecord> records(config.reps);
  ParallelFor(config.reps, workers, [&](std::size_t r) {
    const Seed rep_seed = RepetitionSeed(config.master_seed, r);
    std::optional<InstanceParams> drawn;
    if (random_instance) drawn = BuildInstance(config, rep_seed);
    const InstanceParams& params = random_instance ? *drawn : *fixed;
    const Dataset data =
        SampleDataset(params, DeriveSeed(rep_seed, kNoiseStream));
    auto& rec = records[r];
    for (Method method : config.methods) {
      const MatchingMap estimate = Estimate(method, data);
      const std::size_t loss = HammingLoss(estimate.assignment, params.pi_star());
      rec.errors.push_back(loss > 0 ? 1 : 0);
      rec.hamming.push_back(loss);
    }
    if (random_instance) rec.separation = ComputeSeparation(params);
  });

  TrialReport report;
  report.reps = config.reps;
  for (std::size_t k = 0; k < config.methods.size(); ++k) {
    MethodSummary s;
    s.method = config.methods[k];
    s.errors.reserve(config.reps);
    s.hamming.reserve(config.reps);
    double hamming_total = 0.0;
    for (const auto& rec : records) {
      s.errors.push_back(rec.errors[k]);
      s.hamming.push_back(rec.hamming[k]);
      s.error_count += rec.errors[k];
      hamming_total += static_cast<double>(rec.hamming[k]);
    }
    const double reps = static_cast<double>(config.reps);
    s.error_rate = static_cast<double>(s.error_count) / reps;
    s.wilson = WilsonInterval(s.error_count, config.reps);
    s.mean_hamming = hamming_total / reps;
    report.methods.push_back(std::move(s));
  }
  if (random_instance) {
    for (auto& rec : records) report.separations.push_back(*rec.separation);
  } else {
    report.separations.push_back(ComputeSeparation(*fixed));
  }
  return report;
}

std::vector<KappaBin> BinErrorsByKappa(const TrialReport& report, Method method,
                                       KappaAxis axis, std::size_t bins) {
  if (bins == 0) throw InvalidInput("bin count must be >= 1");
  const auto& summary = report.For(method);
  if (report.separations.size() != summary.errors.size()) {
    throw InvalidInput("report has no per-repetition separation values");
  }
  std::vector<std::pair<double, std::uint8_t>> points;
  for (std::size_t r = 0; r < summary.errors.size(); ++r) {
    const auto& sep = report.separations[r];
    const auto& value =
        axis == KappaAxis::kInIn ? sep.kappa_in_in : sep.kappa_in_out;
    if (value) points.emplace_back(*value, summary.errors[r]);
  }
  std::vector<KappaBin> out(bins);
  if (points.empty()) return out;
  const auto [lo_it, hi_it] = std::minmax_element(
      points.begin(), points.end(),
      [](const auto& l, const auto& r) { return l.first < r.first; });
  const double lo = lo_it->first;
  const double hi = hi_it->first;
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    out[b].lo = lo + width * static_cast<double>(b);
    out[b].hi = b + 1 == bins ? hi : lo + width * static_cast<double>(b + 1);
  }
  for (const auto& [value, err] : points) {
    std::size_t b = width > 0.0
                        ? static_cast<std::size_t>((value - lo) / width)
                        : 0;
    b = std::min(b, bins - 1);
    ++out[b].count;
    out[b].errors += err;
  }
  for (auto& bin : out) {
    if (bin.count == 0) continue;
    bin.rate = static_cast<double>(bin.errors) / static_cast<double>(bin.count);
    bin.wilson = WilsonInterval(bin.errors, bin.count);
  }
  return out;
}

double Heatmap::Mean(std::size_t method_index) const {
  const auto& c = cells.at(method_index);
  if (c.empty()) return 0.0;
  double total = 0.0;
  for (double v : c) total += v;
  return total / static_cast<double>(c.size());
}

std::size_t Heatmap::IndexOf(Method method) const {
  for (std::size_t k = 0; k < methods.size(); ++k) {
    if (methods[k] == method) return k;
  }
  throw std::out_of_range("method " + std::string(MethodName(method)) +
                          " not present in heatmap");
}

namespace {

void CheckGrid(const std::vector<double>& grid, const char* name) {
  if (grid.empty()) throw ConfigError(std::string(name) + " grid is empty");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) {
      throw ConfigError(std::string(name) + " grid must be strictly increasing");
    }
  }
}

}  // namespace

Heatmap DetectionHeatmap(const TrialConfig& base,
                         const std::vector<double>& a_grid,
                         const std::vector<double>& b_grid,
                         std::size_t workers) {
  CheckGrid(a_grid, "a");
  CheckGrid(b_grid, "b");
  Heatmap map;
  map.a_grid = a_grid;
  map.b_grid = b_grid;
  map.methods = base.methods;
  map.cells.assign(base.methods.size(),
                   std::vector<double>(a_grid.size() * b_grid.size(), 0.0));
  for (std::size_t ia = 0; ia < a_grid.size(); ++ia) {
    for (std::size_t ib = 0; ib < b_grid.size(); ++ib) {
      TrialConfig cell = base;
      cell.instance = Experiment2Spec{a_grid[ia], b_grid[ib]};
      const TrialReport report = RunTrials(cell, workers);
      for (std::size_t k = 0; k < base.methods.size(); ++k) {
        map.cells[k][ia * b_grid.size() + ib] = report.methods[k].error_rate;
      }
    }
  }
  return map;
}

CounterexampleRun RunCounterexample(std::size_t n, std::size_t d,
                                    std::size_t reps, Seed seed,
                                    std::size_t workers) {
  if (reps == 0) throw InvalidInput("reps must be >= 1");
  const InstanceParams params = CounterexampleInstance(n, d);
  struct Outcome {
    bool dominated = false;
    bool lsl_correct = false;
  };
  std::vector<Outcome> outcomes(reps);
  ParallelFor(reps, workers, [&](std::size_t r) {
    const Dataset data = SampleDataset(
        params, DeriveSeed(RepetitionSeed(seed, r), kNoiseStream));
    bool dominated = true;
    for (std::size_t i = 0; i < n && dominated; ++i) {
      dominated = SquaredDistance(data.x()[i], data.x_sharp()[i + 1]) <
                  SquaredDistance(data.x()[i], data.x_sharp()[i]);
    }
    const MatchingMap lsl = Estimate(Method::kLsl, data);
    outcomes[r] = {dominated, lsl.assignment == params.pi_star()};
  });

  CounterexampleRun run;
  run.reps = reps;
  run.hypothesis_holds = CounterexampleHypothesisHolds(n, d);
  if (!run.hypothesis_holds) {
    run.warnings.push_back("d = " + std::to_string(d) +
                           " is below 422 log(4n); the failure-probability "
                           "guarantee does not apply");
  }
  for (const auto& o : outcomes) {
    if (o.dominated) {
      ++run.domination_count;
      if (o.lsl_correct) ++run.lsl_recovered_on_domination;
    }
    if (!o.lsl_correct) ++run.lsl_error_count;
  }
  run.frequency =
      static_cast<double>(run.domination_count) / static_cast<double>(reps);
  return run;
}

double CounterexampleFrequency(std::size_t n, std::size_t d, std::size_t reps,
                               Seed seed) {
  const CounterexampleRun run = RunCounterexample(n, d, reps, seed);
  for (const auto& w : run.warnings) std::cerr << "warning: " << w << '\n';
  return run.frequency;
}

}  // namespace matchmap
