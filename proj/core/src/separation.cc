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

#include "matchmap/separation.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "matchmap/error.h"

namespace matchmap {

double SeparationReport::Min() const {
  double value = std::numeric_limits<double>::infinity();
  if (kappa_in_in) value = std::min(value, *kappa_in_in);
  if (kappa_in_out) value = std::min(value, *kappa_in_out);
  return value;
}

double NormalizedDistance(const InstanceParams& params, std::size_t i,
                          std::size_t j) {
  const double si = params.sigma_sharp()[i];
  const double sj = params.sigma_sharp()[j];
  const double dist = std::sqrt(
      SquaredDistance(params.theta_sharp()[i], params.theta_sharp()[j]));
  return dist / std::sqrt(si * si + sj * sj);
}

SeparationReport ComputeSeparation(const InstanceParams& params) {
  const auto inlier = params.InlierMask();
  SeparationReport report;
  for (std::size_t i = 0; i < params.m(); ++i) {
    if (!inlier[i]) continue;
    for (std::size_t j = 0; j < params.m(); ++j) {
      if (j == i) continue;
      // Inlier pairs are symmetric; visit each once.
      if (inlier[j] && j < i) continue;
      const double kappa = NormalizedDistance(params, i, j);
      auto& slot = inlier[j] ? report.kappa_in_in : report.kappa_in_out;
      slot = slot ? std::min(*slot, kappa) : kappa;
    }
  }
  return report;
}

std::string_view RegimeName(Regime regime) {
  switch (regime) {
    case Regime::kKnownVariance: return "known_variance";
    case Regime::kUnknownArbitrary: return "unknown_arbitrary";
    case Regime::kMildHetero: return "mild_hetero";
  }
  return "unknown";
}

bool Thresholds::Contains(const SeparationReport& s) const {
  const bool in_in = !s.kappa_in_in || *s.kappa_in_in >= t_in_in;
  const bool in_out = !s.kappa_in_out || *s.kappa_in_out >= t_in_out;
  return in_in && in_out;
}

namespace {

void CheckSizes(std::size_t n, std::size_t m, std::size_t d) {
  if (n == 0 || d == 0 || m < n) {
    throw InvalidInput("thresholds need n >= 1, m >= n and d >= 1");
  }
}

double LogTerm(std::size_t n, std::size_t m, double factor, double alpha) {
  return std::log(factor * static_cast<double>(n) * static_cast<double>(m) /
                  alpha);
}

}  // namespace

double ThresholdLsns(std::size_t n, std::size_t m, std::size_t d,
                     double alpha) {
  CheckSizes(n, m, d);
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("alpha must lie in (0, 1)");
  const double dd = static_cast<double>(d);
  const double quartic = std::pow(dd * LogTerm(n, m, 4.0, alpha), 0.25);
  const double root = std::sqrt(2.0 * LogTerm(n, m, 8.0, alpha));
  return 4.0 * std::max(quartic, root);
}

double ThresholdLsl(std::size_t n, std::size_t m, std::size_t d,
                    double alpha) {
  CheckSizes(n, m, d);
  if (!(alpha > 0.0 && alpha < 0.5)) {
    throw InvalidInput("alpha must lie in (0, 1/2) for the LSL threshold");
  }
  const double dd = static_cast<double>(d);
  const double quartic = std::pow(2.0 * dd * LogTerm(n, m, 4.0, alpha), 0.25);
  const double root = std::sqrt(3.0 * LogTerm(n, m, 8.0, alpha));
  return std::sqrt(2.0 * dd) + 4.0 * std::max(quartic, root);
}

Thresholds ThresholdMild(std::size_t n, std::size_t m, std::size_t d,
                         double alpha, double r_sigma) {
  CheckSizes(n, m, d);
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("alpha must lie in (0, 1)");
  if (!(r_sigma >= 1.0) || !std::isfinite(r_sigma)) {
    throw InvalidInput("r_sigma must be finite and >= 1");
  }
  const double dd = static_cast<double>(d);
  const double log_term = LogTerm(n, m, 4.0, alpha);
  Thresholds t;
  t.alpha = alpha;
  t.regime = Regime::kMildHetero;
  t.t_in_in = 2.0 * std::pow(4.0 * dd * log_term, 0.25) +
              2.0 * std::sqrt(2.0 * log_term);
  t.t_in_out = std::sqrt(2.0 * (r_sigma - 1.0) * dd) +
               2.0 * std::pow(4.0 * r_sigma * r_sigma * dd * log_term, 0.25) +
               2.0 * std::sqrt(2.0 * r_sigma * log_term);
  return t;
}

Thresholds ThresholdsLsns(std::size_t n, std::size_t m, std::size_t d,
                          double alpha) {
  const double t = ThresholdLsns(n, m, d, alpha);
  return {t, t, alpha, Regime::kKnownVariance};
}

Thresholds ThresholdsLsl(std::size_t n, std::size_t m, std::size_t d,
                         double alpha) {
  const double t = ThresholdLsl(n, m, d, alpha);
  return {t, t, alpha, Regime::kUnknownArbitrary};
}

double NoiseRatio(const InstanceParams& params) {
  const auto [lo, hi] = std::minmax_element(params.sigma_sharp().begin(),
                                            params.sigma_sharp().end());
  return *hi / *lo;
}

std::size_t HammingLoss(std::span<const std::size_t> estimate,
                        std::span<const std::size_t> truth) {
  if (estimate.size() != truth.size()) {
    throw InvalidInput("hamming loss: maps have different domain sizes (" +
                       std::to_string(estimate.size()) + " vs " +
                       std::to_string(truth.size()) + ")");
  }
  std::size_t loss = 0;
  for (std::size_t i = 0; i < estimate.size(); ++i) {
    if (estimate[i] != truth[i]) ++loss;
  }
  return loss;
}

ChiSquareDeviation ChiSquareTail(std::size_t degrees, double x) {
  if (degrees == 0) throw InvalidInput("chi-square degrees must be >= 1");
  if (!(x > 0.0) || !std::isfinite(x)) throw InvalidInput("x must be positive");
  const double lower = 2.0 * std::sqrt(static_cast<double>(degrees) * x);
  return {lower, lower + 2.0 * x};
}

}  // namespace matchmap
