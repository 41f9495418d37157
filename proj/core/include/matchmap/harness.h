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

#ifndef MATCHMAP_HARNESS_H_
#define MATCHMAP_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "matchmap/estimators.h"
#include "matchmap/gen_model.h"
#include "matchmap/random.h"
#include "matchmap/separation.h"

namespace matchmap {

// Which ground truth each repetition uses.
struct Experiment1Spec {};  // fresh random instance per repetition
struct Experiment2Spec {
  double a = 0.0;
  double b = 0.0;
};
struct CounterexampleSpec {};  // m must equal n + 1
struct ExplicitSpec {
  InstanceParams params;
};
using InstanceSpec =
    std::variant<Experiment1Spec, Experiment2Spec, CounterexampleSpec,
                 ExplicitSpec>;

struct TrialConfig {
  InstanceSpec instance = Experiment1Spec{};
  std::vector<Method> methods;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t d = 0;
  std::size_t reps = 0;
  double alpha = 0.05;
  Seed master_seed = 0;
};

// Throws ConfigError describing the first problem found.
void ValidateConfig(const TrialConfig& config);

// True when the instance itself is redrawn on every repetition.
bool IsRandomInstance(const InstanceSpec& spec);

// Ground truth for repetition seed `rep_seed` (ignored by fixed instances).
InstanceParams BuildInstance(const TrialConfig& config, Seed rep_seed);

// Seed used for repetition r.
Seed RepetitionSeed(Seed master, std::size_t rep);

struct ProportionInterval {
  double lower = 0.0;
  double upper = 1.0;
};

inline constexpr double kZ95 = 1.959963984540054;

// Wilson score interval for `successes` out of `trials` (trials >= 1).
ProportionInterval WilsonInterval(std::size_t successes, std::size_t trials,
                                  double z = kZ95);

// Half the width of the Wilson interval; the slack used when testing an
// observed rate against a nominal level.
double WilsonHalfWidth(std::size_t successes, std::size_t trials,
                       double z = kZ95);

struct MethodSummary {
  Method method = Method::kLsl;
  std::size_t error_count = 0;
  double error_rate = 0.0;
  ProportionInterval wilson;
  double mean_hamming = 0.0;
  // Per repetition, in repetition order.
  std::vector<std::uint8_t> errors;
  std::vector<std::size_t> hamming;
};

struct TrialReport {
  std::size_t reps = 0;
  std::vector<MethodSummary> methods;
  // Per-repetition separation when the instance is random; otherwise a
  // single entry for the fixed instance.
  std::vector<SeparationReport> separations;

  // Throws std::out_of_range if the method was not run.
  const MethodSummary& For(Method method) const;
};

// Number of workers used when none is given: MATCHMAP_THREADS if it parses
// as a positive integer, else std::thread::hardware_concurrency() (min 1).
std::size_t DefaultWorkerCount();

// Runs fn(0..count-1) across up to `workers` threads. Each index is visited
// exactly once; the first exception thrown is rethrown after all threads
// join.
void ParallelFor(std::size_t count, std::size_t workers,
                 const std::function<void(std::size_t)>& fn);

// Runs config.reps repetitions. Output depends only on the config, never on
// `workers` (0 means DefaultWorkerCount()).
TrialReport RunTrials(const TrialConfig& config, std::size_t workers = 0);

enum class KappaAxis { kInIn, kInOut };

struct KappaBin {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
  std::size_t errors = 0;
  double rate = 0.0;
  ProportionInterval wilson;
};

// Bins the 0-1 errors of one method by realized kappa into `bins`
// equal-width bins spanning [min, max] of the realized values. Repetitions
// without a value on the axis are skipped. Empty bins are kept (count 0).
std::vector<KappaBin> BinErrorsByKappa(const TrialReport& report, Method method,
                                       KappaAxis axis, std::size_t bins = 10);

// Error rate per (a, b) cell for each method of the base config.
struct Heatmap {
  std::vector<double> a_grid;
  std::vector<double> b_grid;
  std::vector<Method> methods;
  // cells[k][ia * b_grid.size() + ib] is the error rate of methods[k].
  std::vector<std::vector<double>> cells;

  double At(std::size_t method_index, std::size_t ia, std::size_t ib) const {
    return cells[method_index][ia * b_grid.size() + ib];
  }
  double Mean(std::size_t method_index) const;
  std::size_t IndexOf(Method method) const;
};

// Every cell reuses base.master_seed, so all cells see the same noise draws.
// The base instance is replaced by Experiment2Spec{a, b}.
Heatmap DetectionHeatmap(const TrialConfig& base,
                         const std::vector<double>& a_grid,
                         const std::vector<double>& b_grid,
                         std::size_t workers = 0);

struct CounterexampleRun {
  std::size_t reps = 0;
  // Repetitions where |X_i - X#_{i+1}| < |X_i - X#_i| for every i.
  std::size_t domination_count = 0;
  double frequency = 0.0;
  // Among dominated repetitions, how many had LSL return pi*. Must be 0.
  std::size_t lsl_recovered_on_domination = 0;
  std::size_t lsl_error_count = 0;
  bool hypothesis_holds = false;
  std::vector<std::string> warnings;
};

CounterexampleRun RunCounterexample(std::size_t n, std::size_t d,
                                    std::size_t reps, Seed seed,
                                    std::size_t workers = 0);

// Fraction of repetitions in which the shifted map i -> i + 1 beats the truth
// coordinate-wise. Writes a warning to stderr when d < 422 log(4n).
double CounterexampleFrequency(std::size_t n, std::size_t d, std::size_t reps,
                               Seed seed);

}  // namespace matchmap

#endif  // MATCHMAP_HARNESS_H_
