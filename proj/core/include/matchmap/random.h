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

#ifndef MATCHMAP_RANDOM_H_
#define MATCHMAP_RANDOM_H_

#include <cstdint>
#include <optional>
#include <random>

namespace matchmap {

using Seed = std::uint64_t;

// SplitMix64 finalizer over (seed, stream). Used to give every Monte-Carlo
// repetition its own independent seed so results do not depend on the order
// in which repetitions run.
Seed DeriveSeed(Seed master, std::uint64_t stream);

// Seeded generator with a pinned sampling scheme:
//  * engine: std::mt19937_64 seeded with DeriveSeed(seed, 0)
//  * uniform: top 53 bits of one engine draw, in [0, 1)
//  * gaussian: Box-Muller, both variates of a pair are used in turn
// std::normal_distribution is deliberately not used because its algorithm
// differs between standard libraries.
class Rng {
 public:
  explicit Rng(Seed seed);

  double Uniform();
  double Uniform(double lo, double hi);
  double Gaussian();

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

}  // namespace matchmap

#endif  // MATCHMAP_RANDOM_H_
