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

#ifndef MATCHMAP_LAP_SOLVER_H_
#define MATCHMAP_LAP_SOLVER_H_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace matchmap {

// Dense n x m matrix of finite matching costs with n >= 1 and m >= n.
// Row i holds the cost of pairing the i-th vector of the smaller set with
// every vector of the larger set. Storage is row-major.
class CostMatrix {
 public:
  // Throws InvalidInput if the shape is invalid or any value is NaN/inf.
  CostMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  // Builds from nested rows; all rows must have the same length.
  static CostMatrix FromRows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double operator()(std::size_t i, std::size_t j) const {
    return values_[i * cols_ + j];
  }
  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * cols_, cols_};
  }
  const std::vector<double>& values() const { return values_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> values_;
};

// An injective map from [0, n) into [0, m), plus its total cost.
struct MatchingMap {
  std::vector<std::size_t> assignment;
  double objective = 0.0;
};

// Sum of cost(i, assignment[i]) accumulated in row order.
double AssignmentCost(const CostMatrix& cost,
                      std::span<const std::size_t> assignment);

// True if every entry is < cols and no two entries coincide.
bool IsInjective(std::span<const std::size_t> assignment, std::size_t cols);

// Minimum-cost injective assignment of rows to columns.
//
// Shortest augmenting path with row/column dual potentials; rows are inserted
// in index order and columns scanned in index order, so the output is a
// deterministic function of the input. Among several optima any one may be
// returned. O(n^2 m).
MatchingMap SolveRectangularLap(const CostMatrix& cost);

// Exhaustive search over all m!/(m-n)! injections. Returns the
// lexicographically smallest optimal assignment. Only for n <= 8, m <= 10.
MatchingMap BruteForceLap(const CostMatrix& cost);

inline constexpr std::size_t kBruteForceMaxRows = 8;
inline constexpr std::size_t kBruteForceMaxCols = 10;

// Debug dump: one row per line, comma separated, shortest round-trip floats.
void WriteCostMatrixCsv(std::ostream& out, const CostMatrix& cost);
std::string CostMatrixToCsv(const CostMatrix& cost);

}  // namespace matchmap

#endif  // MATCHMAP_LAP_SOLVER_H_
