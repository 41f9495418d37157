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

#ifndef MATCHMAP_ESTIMATORS_H_
#define MATCHMAP_ESTIMATORS_H_

#include <optional>
#include <string>
#include <string_view>

#include "matchmap/dataset.h"
#include "matchmap/lap_solver.h"

namespace matchmap {

enum class Method { kGreedy, kLss, kLsns, kLsl };

// Lowercase name used in files and on the command line ("greedy", "lss", ...).
std::string_view MethodName(Method method);
std::optional<Method> ParseMethod(std::string_view name);

// Least sum of squares: cost(i, j) = |X_i - X#_j|^2.
CostMatrix CostLss(const Dataset& data);

// Least sum of normalized squares:
// cost(i, j) = |X_i - X#_j|^2 / (sigma_i^2 + sigma#_j^2).
// Throws InvalidInput when the dataset carries no noise levels.
CostMatrix CostLsns(const Dataset& data);

// Least sum of logarithms: cost(i, j) = log(max(|X_i - X#_j|^2, floor)),
// with floor the smallest positive normal double. The clamp keeps exact
// matches finite while still ranking them below every other pair.
CostMatrix CostLsl(const Dataset& data);

inline constexpr double kLslDistanceFloor = 0x1.0p-1022;

// For i = 0..n-1 in order, take the nearest still-unused X#_j (smallest j on
// ties). The reported objective is the LSS cost of the result.
MatchingMap GreedyMatch(const Dataset& data);

// Greedy dispatches to GreedyMatch; the other methods build their cost matrix
// and solve the assignment problem.
MatchingMap Estimate(Method method, const Dataset& data);

// Cost matrix of the given criterion. Greedy scans squared distances, so it
// shares the LSS matrix.
CostMatrix BuildCost(Method method, const Dataset& data);

}  // namespace matchmap

#endif  // MATCHMAP_ESTIMATORS_H_
