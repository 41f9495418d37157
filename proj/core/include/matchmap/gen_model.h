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

#ifndef MATCHMAP_GEN_MODEL_H_
#define MATCHMAP_GEN_MODEL_H_

#include <cstddef>
#include <vector>

#include "matchmap/dataset.h"
#include "matchmap/random.h"

namespace matchmap {

// Ground truth of the Gaussian matching model: m true features theta#_j with
// noise levels sigma#_j, and an injective map pi* from [0, n) into [0, m).
// The X-side parameters are not stored; theta_i = theta#_{pi*(i)} and
// sigma_i = sigma#_{pi*(i)}.
class InstanceParams {
 public:
  // Throws InvalidInput unless 1 <= n <= m, d >= 1, pi* is injective into
  // [0, m), and every sigma# is finite and strictly positive.
  InstanceParams(VectorSet theta_sharp, std::vector<double> sigma_sharp,
                 std::vector<std::size_t> pi_star);

  std::size_t n() const { return pi_star_.size(); }
  std::size_t m() const { return theta_sharp_.size(); }
  std::size_t dim() const { return theta_sharp_.dim(); }

  const VectorSet& theta_sharp() const { return theta_sharp_; }
  const std::vector<double>& sigma_sharp() const { return sigma_sharp_; }
  const std::vector<std::size_t>& pi_star() const { return pi_star_; }

  std::span<const double> theta(std::size_t i) const {
    return theta_sharp_[pi_star_[i]];
  }
  double sigma(std::size_t i) const { return sigma_sharp_[pi_star_[i]]; }

  // Indices j of X# with no partner in X, ascending.
  std::vector<std::size_t> Outliers() const;
  // Mask over [0, m): true where j is in the image of pi*.
  std::vector<bool> InlierMask() const;

  friend bool operator==(const InstanceParams&, const InstanceParams&) = default;

 private:
  VectorSet theta_sharp_;
  std::vector<double> sigma_sharp_;
  std::vector<std::size_t> pi_star_;
};

// X_i = theta_i + sigma_i xi_i and X#_j = theta#_j + sigma#_j xi#_j with
// i.i.d. standard Gaussian noise from Rng(seed). X is drawn first (row by
// row), then X#. The dataset carries sigma = sigma# o pi* and sigma#.
Dataset SampleDataset(const InstanceParams& params, Seed seed);

// Random features with outliers. For each j in [0, m) and coordinate k,
// tau ~ U[0, 2] and theta#_{j,k} ~ N(0, tau) (drawn as a pair, row-major);
// outliers j >= n get every coordinate shifted by their 1-based index j + 1;
// then sigma#_j ~ U[0.5, 2]. pi*(i) = i. Requires m > n >= 1 and d >= 1.
InstanceParams Experiment1Instance(std::size_t n, std::size_t m,
                                   std::size_t d, Seed seed);

// Collinear features on the first axis: theta#_k = k a e_1 for k = 1..n and
// theta#_{n+k} = (n a + k b) e_1 for the m - n outliers; sigma#_k = k^(-3/2);
// pi*(i) = i. Requires m > n >= 1, d >= 1, a > 0, b > 0.
InstanceParams Experiment2Instance(std::size_t n, std::size_t m,
                                   std::size_t d, double a, double b);

// Lower-bound construction with m = n + 1: theta#_1 = e_1, sigma#_i =
// 2^-(i-1), theta#_{i+1} = theta#_i + 2^-(i+1) sqrt(d) e_1, pi*(i) = i.
// Every consecutive pair has normalized distance sqrt(d / 20). Requires
// n >= 2 and d >= 1.
InstanceParams CounterexampleInstance(std::size_t n, std::size_t d);

// Whether d >= 422 log(4n), the dimension condition under which the
// counterexample provably defeats distance-based M-estimators.
bool CounterexampleHypothesisHolds(std::size_t n, std::size_t d);

}  // namespace matchmap

#endif  // MATCHMAP_GEN_MODEL_H_
