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

#include "matchmap/lap_solver.h"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "matchmap/error.h"
#include "matchmap/io.h"

namespace matchmap {

CostMatrix::CostMatrix(std::size_t rows, std::size_t cols,
                       std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (rows_ == 0) throw InvalidInput("cost matrix must have at least one row");
  if (cols_ < rows_) {
    throw InvalidInput("cost matrix needs cols >= rows, got " +
                       std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  if (values_.size() != rows_ * cols_) {
    throw InvalidInput("cost matrix value count does not match its shape");
  }
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k])) {
      throw InvalidInput("cost matrix entry (" + std::to_string(k / cols_) +
                         "," + std::to_string(k % cols_) + ") is not finite");
    }
  }
}

CostMatrix CostMatrix::FromRows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw InvalidInput("cost matrix must have at least one row");
  const std::size_t cols = rows.front().size();
  std::vector<double> values;
  values.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw InvalidInput("cost matrix rows are ragged");
    values.insert(values.end(), r.begin(), r.end());
  }
  return CostMatrix(rows.size(), cols, std::move(values));
}

double AssignmentCost(const CostMatrix& cost,
                      std::span<const std::size_t> assignment) {
  double total = 0.0;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    total += cost(i, assignment[i]);
  }
  return total;
}

bool IsInjective(std::span<const std::size_t> assignment, std::size_t cols) {
  std::vector<bool> seen(cols, false);
  for (std::size_t j : assignment) {
    if (j >= cols || seen[j]) return false;
    seen[j] = true;
  }
  return true;
}

namespace {

MatchingMap SolveSingleRow(const CostMatrix& cost) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < cost.cols(); ++j) {
    if (cost(0, j) < cost(0, best)) best = j;
  }
  return {{best}, cost(0, best)};
}

}  // namespace

MatchingMap SolveRectangularLap(const CostMatrix& cost) {
  const std::size_t n = cost.rows();
  const std::size_t m = cost.cols();
  if (n == 1) return SolveSingleRow(cost);

  constexpr double kInf = std::numeric_limits<double>::infinity();
  // Slot 0 is a virtual column used as the root of each augmenting search;
  // real rows and columns are 1-based inside this routine.
  std::vector<double> row_potential(n + 1, 0.0);
  std::vector<double> col_potential(m + 1, 0.0);
  std::vector<std::size_t> col_owner(m + 1, 0);
  std::vector<std::size_t> predecessor(m + 1, 0);
  std::vector<double> min_slack(m + 1);
  std::vector<char> visited(m + 1);

  for (std::size_t row = 1; row <= n; ++row) {
    col_owner[0] = row;
    std::size_t current = 0;
    std::fill(min_slack.begin(), min_slack.end(), kInf);
    std::fill(visited.begin(), visited.end(), 0);
    do {
      visited[current] = 1;
      const std::size_t i = col_owner[current];
      double delta = kInf;
      std::size_t next = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (visited[j]) continue;
        const double reduced =
            cost(i - 1, j - 1) - row_potential[i] - col_potential[j];
        if (reduced < min_slack[j]) {
          min_slack[j] = reduced;
          predecessor[j] = current;
        }
        if (min_slack[j] < delta) {
          delta = min_slack[j];
          next = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (visited[j]) {
          row_potential[col_owner[j]] += delta;
          col_potential[j] -= delta;
        } else {
          min_slack[j] -= delta;
        }
      }
      current = next;
    } while (col_owner[current] != 0);

    // Flip the alternating path back to the root.
    do {
      const std::size_t prev = predecessor[current];
      col_owner[current] = col_owner[prev];
      current = prev;
    } while (current != 0);
  }

  MatchingMap result;
  result.assignment.assign(n, 0);
  for (std::size_t j = 1; j <= m; ++j) {
    if (col_owner[j] != 0) result.assignment[col_owner[j] - 1] = j - 1;
  }
  result.objective = AssignmentCost(cost, result.assignment);
  return result;
}

namespace {

struct Enumerator {
  const CostMatrix& cost;
  std::vector<std::size_t> current;
  std::vector<char> used;
  std::vector<std::size_t> best;
  double best_cost = std::numeric_limits<double>::infinity();

  void Visit(std::size_t row) {
    if (row == cost.rows()) {
      // Same accumulation order as AssignmentCost so ties compare exactly.
      const double total = AssignmentCost(cost, current);
      if (total < best_cost) {
        best_cost = total;
        best = current;
      }
      return;
    }
    for (std::size_t j = 0; j < cost.cols(); ++j) {
      if (used[j]) continue;
      used[j] = 1;
      current[row] = j;
      Visit(row + 1);
      used[j] = 0;
    }
  }
};

}  // namespace

MatchingMap BruteForceLap(const CostMatrix& cost) {
  if (cost.rows() > kBruteForceMaxRows || cost.cols() > kBruteForceMaxCols) {
    throw InvalidInput("brute-force LAP limited to 8 rows and 10 columns");
  }
  Enumerator e{cost, std::vector<std::size_t>(cost.rows(), 0),
               std::vector<char>(cost.cols(), 0), {}};
  e.Visit(0);
  return {e.best, e.best_cost};
}

void WriteCostMatrixCsv(std::ostream& out, const CostMatrix& cost) {
  for (std::size_t i = 0; i < cost.rows(); ++i) {
    for (std::size_t j = 0; j < cost.cols(); ++j) {
      if (j > 0) out << ',';
      out << FormatDouble(cost(i, j));
    }
    out << '\n';
  }
}

std::string CostMatrixToCsv(const CostMatrix& cost) {
  std::ostringstream out;
  WriteCostMatrixCsv(out, cost);
  return out.str();
}

}  // namespace matchmap
