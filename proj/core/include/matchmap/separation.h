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

#ifndef MATCHMAP_SEPARATION_H_
#define MATCHMAP_SEPARATION_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "matchmap/gen_model.h"

namespace matchmap {

// Minimal distance-to-noise ratios of an instance.
// kappa_in_in is absent when n < 2 (no inlier pair); kappa_in_out is absent
// when m == n (no outliers).
struct SeparationReport {
  std::optional<double> kappa_in_in;
  std::optional<double> kappa_in_out;

  // min(kappa_in_in, kappa_in_out) over the values that are present;
  // +infinity if neither is.
  double Min() const;
};

// |theta#_i - theta#_j| / sqrt(sigma#_i^2 + sigma#_j^2) for indices into X#.
double NormalizedDistance(const InstanceParams& params, std::size_t i,
                          std::size_t j);

SeparationReport ComputeSeparation(const InstanceParams& params);

enum class Regime { kKnownVariance, kUnknownArbitrary, kMildHetero };
std::string_view RegimeName(Regime regime);

// Detection region [t_in_in, inf) x [t_in_out, inf) at confidence 1 - alpha.
struct Thresholds {
  double t_in_in = 0.0;
  double t_in_out = 0.0;
  double alpha = 0.0;
  Regime regime = Regime::kKnownVariance;

  bool Contains(const SeparationReport& s) const;
};

// Known variances (LSNS):
//   4 max{ (d log(4nm/alpha))^(1/4), (2 log(8nm/alpha))^(1/2) }.
// Requires n >= 1, m >= n, d >= 1, alpha in (0, 1).
double ThresholdLsns(std::size_t n, std::size_t m, std::size_t d, double alpha);

// Unknown arbitrary variances (LSL):
//   sqrt(2d) + 4 max{ (2d log(4nm/alpha))^(1/4), (3 log(8nm/alpha))^(1/2) }.
// Requires alpha in (0, 1/2).
double ThresholdLsl(std::size_t n, std::size_t m, std::size_t d, double alpha);

// Unknown variances whose ratio max/min is at most r_sigma (LSL):
//   t_in_in  = 2 (4d L)^(1/4) + 2 (2L)^(1/2)
//   t_in_out = sqrt(2(r-1)d) + 2 (4 r^2 d L)^(1/4) + 2 (2 r L)^(1/2)
// with L = log(4nm/alpha). Requires r_sigma >= 1, alpha in (0, 1).
Thresholds ThresholdMild(std::size_t n, std::size_t m, std::size_t d,
                         double alpha, double r_sigma);

Thresholds ThresholdsLsns(std::size_t n, std::size_t m, std::size_t d,
                          double alpha);
Thresholds ThresholdsLsl(std::size_t n, std::size_t m, std::size_t d,
                         double alpha);

// max_j sigma#_j / min_j sigma#_j.
double NoiseRatio(const InstanceParams& params);

// Number of indices where the two maps disagree.
// Throws InvalidInput when the domains differ in size.
std::size_t HammingLoss(std::span<const std::size_t> estimate,
                        std::span<const std::size_t> truth);

// Deviation bounds for Y ~ chi^2(D):
//   P(Y - D <= -lower) <= e^-x and P(Y - D >= upper) <= e^-x
// with lower = 2 sqrt(Dx) and upper = 2 sqrt(Dx) + 2x.
struct ChiSquareDeviation {
  double lower = 0.0;
  double upper = 0.0;
};
ChiSquareDeviation ChiSquareTail(std::size_t degrees, double x);

}  // namespace matchmap

#endif  // MATCHMAP_SEPARATION_H_
