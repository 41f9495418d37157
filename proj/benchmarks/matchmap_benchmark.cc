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

#include <vector>

#include "benchmark/benchmark.h"
#include "matchmap/estimators.h"
#include "matchmap/gen_model.h"
#include "matchmap/harness.h"
#include "matchmap/lap_solver.h"
#include "matchmap/random.h"

namespace matchmap {
namespace {

CostMatrix UniformCost(std::size_t n, std::size_t m, Seed seed) {
  Rng rng(seed);
  std::vector<double> values(n * m);
  for (double& v : values) v = rng.Uniform();
  return CostMatrix(n, m, std::move(values));
}

void BM_SolveRectangularLap(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto cost = UniformCost(n, n + n / 4, 1);
  for (auto _ : state) benchmark::DoNotOptimize(SolveRectangularLap(cost));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveRectangularLap)->RangeMultiplier(2)->Range(16, 512)->Complexity();

void BM_BuildCost(benchmark::State& state) {
  const auto method = static_cast<Method>(state.range(0));
  const auto data = SampleDataset(Experiment1Instance(100, 130, 50, 2), 3);
  for (auto _ : state) benchmark::DoNotOptimize(BuildCost(method, data));
  state.SetLabel(std::string(MethodName(method)));
}
BENCHMARK(BM_BuildCost)->DenseRange(0, 3);

void BM_Estimate(benchmark::State& state) {
  const auto method = static_cast<Method>(state.range(0));
  const auto data = SampleDataset(Experiment1Instance(100, 130, 50, 2), 3);
  for (auto _ : state) benchmark::DoNotOptimize(Estimate(method, data));
  state.SetLabel(std::string(MethodName(method)));
}
BENCHMARK(BM_Estimate)->DenseRange(0, 3);

void BM_RunTrials(benchmark::State& state) {
  TrialConfig c;
  c.instance = Experiment2Spec{0.05, 1.0};
  c.methods = {Method::kLsl, Method::kLss};
  c.n = 30;
  c.m = 36;
  c.d = 10;
  c.reps = 100;
  const auto workers = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(RunTrials(c, workers));
}
BENCHMARK(BM_RunTrials)->Arg(1)->Arg(4)->UseRealTime();

}  // namespace
}  // namespace matchmap

BENCHMARK_MAIN();
