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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "matchmap/dataset.h"
#include "matchmap/error.h"
#include "matchmap/estimators.h"

namespace matchmap {

VectorSet::VectorSet(std::size_t size, std::size_t dim, std::vector<double> data)
    : size_(size), dim_(dim), data_(std::move(data)) {
  if (data_.size() != size_ * dim_) {
    throw InvalidInput("vector set storage does not match size x dim");
  }
}

VectorSet VectorSet::FromRows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  const std::size_t dim = rows.front().size();
  std::vector<double> data;
  data.reserve(rows.size() * dim);
  for (const auto& r : rows) {
    if (r.size() != dim) throw InvalidInput("vectors have unequal dimension");
    data.insert(data.end(), r.begin(), r.end());
  }
  return VectorSet(rows.size(), dim, std::move(data));
}

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  double total = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = a[k] - b[k];
    total += diff * diff;
  }
  return total;
}

namespace {

void CheckNoiseLevels(const std::vector<double>& levels, std::size_t expected,
                      const char* name) {
  if (levels.size() != expected) {
    throw InvalidInput(std::string(name) + " has " +
                       std::to_string(levels.size()) + " entries, expected " +
                       std::to_string(expected));
  }
  for (double s : levels) {
    if (!std::isfinite(s) || !(s > 0.0)) {
      throw InvalidInput(std::string(name) +
                         " entries must be finite and strictly positive");
    }
  }
}

void CheckFinite(const VectorSet& set, const char* name) {
  for (double v : set.data()) {
    if (!std::isfinite(v)) {
      throw InvalidInput(std::string(name) + " contains a non-finite value");
    }
  }
}

}  // namespace

Dataset::Dataset(VectorSet x, VectorSet x_sharp,
                 std::optional<std::vector<double>> sigma,
                 std::optional<std::vector<double>> sigma_sharp)
    : x_(std::move(x)),
      x_sharp_(std::move(x_sharp)),
      sigma_(std::move(sigma)),
      sigma_sharp_(std::move(sigma_sharp)) {
  if (x_.size() == 0) throw InvalidInput("X must contain at least one vector");
  if (x_sharp_.size() < x_.size()) {
    throw InvalidInput("X# must contain at least as many vectors as X (m >= n)");
  }
  if (x_.dim() == 0) throw InvalidInput("vector dimension must be >= 1");
  if (x_.dim() != x_sharp_.dim()) {
    throw InvalidInput("dimension mismatch between X (" +
                       std::to_string(x_.dim()) + ") and X# (" +
                       std::to_string(x_sharp_.dim()) + ")");
  }
  CheckFinite(x_, "X");
  CheckFinite(x_sharp_, "X#");
  if (sigma_) CheckNoiseLevels(*sigma_, x_.size(), "sigma");
  if (sigma_sharp_) CheckNoiseLevels(*sigma_sharp_, x_sharp_.size(), "sigma#");
}

std::string_view MethodName(Method method) {
  switch (method) {
    case Method::kGreedy: return "greedy";
    case Method::kLss: return "lss";
    case Method::kLsns: return "lsns";
    case Method::kLsl: return "lsl";
  }
  return "unknown";
}

std::optional<Method> ParseMethod(std::string_view name) {
  for (Method m : {Method::kGreedy, Method::kLss, Method::kLsns, Method::kLsl}) {
    if (MethodName(m) == name) return m;
  }
  return std::nullopt;
}

namespace {

template <typename EntryFn>
CostMatrix BuildFromDistances(const Dataset& data, EntryFn entry) {
  const std::size_t n = data.n();
  const std::size_t m = data.m();
  std::vector<double> values(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      values[i * m + j] =
          entry(i, j, SquaredDistance(data.x()[i], data.x_sharp()[j]));
    }
  }
  return CostMatrix(n, m, std::move(values));
}

}  // namespace

CostMatrix CostLss(const Dataset& data) {
  return BuildFromDistances(
      data, [](std::size_t, std::size_t, double sq) { return sq; });
}

CostMatrix CostLsns(const Dataset& data) {
  if (!data.has_noise_levels()) {
    throw InvalidInput("LSNS requires both sigma and sigma# noise levels");
  }
  const auto& sigma = *data.sigma();
  const auto& sigma_sharp = *data.sigma_sharp();
  return BuildFromDistances(data, [&](std::size_t i, std::size_t j, double sq) {
    return sq / (sigma[i] * sigma[i] + sigma_sharp[j] * sigma_sharp[j]);
  });
}

CostMatrix CostLsl(const Dataset& data) {
  return BuildFromDistances(data, [](std::size_t, std::size_t, double sq) {
    return std::log(std::max(sq, kLslDistanceFloor));
  });
}

MatchingMap GreedyMatch(const Dataset& data) {
  const std::size_t n = data.n();
  const std::size_t m = data.m();
  std::vector<char> used(m, 0);
  MatchingMap result;
  result.assignment.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t best = m;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < m; ++j) {
      if (used[j]) continue;
      const double dist = SquaredDistance(data.x()[i], data.x_sharp()[j]);
      if (best == m || dist < best_dist) {
        best = j;
        best_dist = dist;
      }
    }
    used[best] = 1;
    result.assignment.push_back(best);
    result.objective += best_dist;
  }
  return result;
}

CostMatrix BuildCost(Method method, const Dataset& data) {
  switch (method) {
    case Method::kGreedy:
    case Method::kLss: return CostLss(data);
    case Method::kLsns: return CostLsns(data);
    case Method::kLsl: return CostLsl(data);
  }
  throw InvalidInput("unknown method");
}

MatchingMap Estimate(Method method, const Dataset& data) {
  if (method == Method::kGreedy) return GreedyMatch(data);
  return SolveRectangularLap(BuildCost(method, data));
}

}  // namespace matchmap
