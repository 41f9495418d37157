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

#include "matchmap/gen_model.h"

#include <cmath>
#include <string>
#include <utility>

#include "matchmap/error.h"
#include "matchmap/lap_solver.h"

namespace matchmap {

InstanceParams::InstanceParams(VectorSet theta_sharp,
                               std::vector<double> sigma_sharp,
                               std::vector<std::size_t> pi_star)
    : theta_sharp_(std::move(theta_sharp)),
      sigma_sharp_(std::move(sigma_sharp)),
      pi_star_(std::move(pi_star)) {
  if (pi_star_.empty()) throw InvalidInput("pi* must map at least one index");
  if (m() < n()) throw InvalidInput("instance needs m >= n");
  if (dim() == 0) throw InvalidInput("feature dimension must be >= 1");
  if (sigma_sharp_.size() != m()) {
    throw InvalidInput("sigma# has " + std::to_string(sigma_sharp_.size()) +
                       " entries, expected m = " + std::to_string(m()));
  }
  for (double s : sigma_sharp_) {
    if (!std::isfinite(s) || !(s > 0.0)) {
      throw InvalidInput("sigma# entries must be finite and strictly positive");
    }
  }
  for (double v : theta_sharp_.data()) {
    if (!std::isfinite(v)) throw InvalidInput("theta# contains a non-finite value");
  }
  if (!IsInjective(pi_star_, m())) {
    throw InvalidInput("pi* must be injective with values in [1, m]");
  }
}

std::vector<bool> InstanceParams::InlierMask() const {
  std::vector<bool> mask(m(), false);
  for (std::size_t j : pi_star_) mask[j] = true;
  return mask;
}

std::vector<std::size_t> InstanceParams::Outliers() const {
  const auto mask = InlierMask();
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < m(); ++j) {
    if (!mask[j]) out.push_back(j);
  }
  return out;
}

Dataset SampleDataset(const InstanceParams& params, Seed seed) {
  Rng rng(seed);
  const std::size_t d = params.dim();
  VectorSet x(params.n(), d);
  std::vector<double> sigma(params.n());
  for (std::size_t i = 0; i < params.n(); ++i) {
    sigma[i] = params.sigma(i);
    const auto theta = params.theta(i);
    auto row = x[i];
    for (std::size_t k = 0; k < d; ++k) row[k] = theta[k] + sigma[i] * rng.Gaussian();
  }
  VectorSet x_sharp(params.m(), d);
  for (std::size_t j = 0; j < params.m(); ++j) {
    const double s = params.sigma_sharp()[j];
    const auto theta = params.theta_sharp()[j];
    auto row = x_sharp[j];
    for (std::size_t k = 0; k < d; ++k) row[k] = theta[k] + s * rng.Gaussian();
  }
  return Dataset(std::move(x), std::move(x_sharp), std::move(sigma),
                 params.sigma_sharp());
}

namespace {

std::vector<std::size_t> Identity(std::size_t n) {
  std::vector<std::size_t> pi(n);
  for (std::size_t i = 0; i < n; ++i) pi[i] = i;
  return pi;
}

void RequireOutliers(std::size_t n, std::size_t m, std::size_t d) {
  if (n == 0) throw InvalidInput("n must be >= 1");
  if (m <= n) throw InvalidInput("this generator requires m > n");
  if (d == 0) throw InvalidInput("d must be >= 1");
}

}  // namespace

InstanceParams Experiment1Instance(std::size_t n, std::size_t m,
                                   std::size_t d, Seed seed) {
  RequireOutliers(n, m, d);
  Rng rng(seed);
  VectorSet theta(m, d);
  for (std::size_t j = 0; j < m; ++j) {
    auto row = theta[j];
    for (std::size_t k = 0; k < d; ++k) {
      const double variance = rng.Uniform(0.0, 2.0);
      row[k] = std::sqrt(variance) * rng.Gaussian();
    }
  }
  for (std::size_t j = n; j < m; ++j) {
    for (double& v : theta[j]) v += static_cast<double>(j + 1);
  }
  std::vector<double> sigma(m);
  for (double& s : sigma) s = rng.Uniform(0.5, 2.0);
  return InstanceParams(std::move(theta), std::move(sigma), Identity(n));
}

InstanceParams Experiment2Instance(std::size_t n, std::size_t m,
                                   std::size_t d, double a, double b) {
  RequireOutliers(n, m, d);
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw InvalidInput("experiment 2 needs a > 0 and b > 0");
  }
  VectorSet theta(m, d);
  std::vector<double> sigma(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double k = static_cast<double>(j + 1);
    theta[j][0] = j < n ? k * a
                        : static_cast<double>(n) * a +
                              static_cast<double>(j + 1 - n) * b;
    sigma[j] = std::pow(k, -1.5);
  }
  return InstanceParams(std::move(theta), std::move(sigma), Identity(n));
}

InstanceParams CounterexampleInstance(std::size_t n, std::size_t d) {
  if (n < 2) throw InvalidInput("counterexample requires n >= 2");
  if (d == 0) throw InvalidInput("d must be >= 1");
  const std::size_t m = n + 1;
  const double root_d = std::sqrt(static_cast<double>(d));
  VectorSet theta(m, d);
  std::vector<double> sigma(m);
  theta[0][0] = 1.0;
  sigma[0] = 1.0;
  for (std::size_t i = 1; i < m; ++i) {
    // Slot i holds the 1-based feature i + 1.
    theta[i][0] = theta[i - 1][0] + std::ldexp(root_d, -static_cast<int>(i + 1));
    sigma[i] = std::ldexp(1.0, -static_cast<int>(i));
  }
  return InstanceParams(std::move(theta), std::move(sigma), Identity(n));
}

bool CounterexampleHypothesisHolds(std::size_t n, std::size_t d) {
  return static_cast<double>(d) >= 422.0 * std::log(4.0 * static_cast<double>(n));
}

}  // namespace matchmap
