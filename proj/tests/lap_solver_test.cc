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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "matchmap/error.h"
#include "test_util.h"

namespace matchmap {
namespace {

using ::matchmap::testing::RandomCost;
using Assignment = std::vector<std::size_t>;

TEST(CostMatrixTest, RejectsNonFiniteEntries) {
  EXPECT_THROW(CostMatrix::FromRows({{1.0, std::nan("")}}), InvalidInput);
  EXPECT_THROW(
      CostMatrix::FromRows({{std::numeric_limits<double>::infinity(), 0.0}}),
      InvalidInput);
  EXPECT_THROW(
      CostMatrix::FromRows({{-std::numeric_limits<double>::infinity()}}),
      InvalidInput);
}

TEST(CostMatrixTest, RejectsBadShapes) {
  EXPECT_THROW(CostMatrix::FromRows({{1.0}, {2.0}}), InvalidInput);  // m < n
  EXPECT_THROW(CostMatrix::FromRows({}), InvalidInput);
  EXPECT_THROW(CostMatrix::FromRows({{1.0, 2.0}, {3.0}}), InvalidInput);
  EXPECT_THROW(CostMatrix(2, 2, {1.0, 2.0, 3.0}), InvalidInput);
}

TEST(CostMatrixTest, CsvDumpRoundTripsFullPrecision) {
  const auto cost = CostMatrix::FromRows({{0.1, 1.0 / 3.0}, {-2.5e-300, 7.0}});
  EXPECT_EQ(CostMatrixToCsv(cost), "0.1,0.3333333333333333\n-2.5e-300,7\n");
}

TEST(SolveRectangularLapTest, TwoByTwo) {
  const auto result = SolveRectangularLap(CostMatrix::FromRows({{1, 2}, {2, 1}}));
  EXPECT_EQ(result.assignment, (Assignment{0, 1}));
  EXPECT_EQ(result.objective, 2.0);
}

TEST(SolveRectangularLapTest, SingleRowTakesMinimum) {
  const auto result = SolveRectangularLap(CostMatrix::FromRows({{5, 3}}));
  EXPECT_EQ(result.assignment, (Assignment{1}));
  EXPECT_EQ(result.objective, 3.0);
}

TEST(SolveRectangularLapTest, SingleRowTieTakesFirstColumn) {
  const auto result = SolveRectangularLap(CostMatrix::FromRows({{4, 2, 2}}));
  EXPECT_EQ(result.assignment, (Assignment{1}));
}

TEST(SolveRectangularLapTest, RandomFourBySixMatchesBruteForce) {
  std::mt19937_64 gen(4);
  const auto cost = RandomCost(gen, 4, 6);
  const auto fast = SolveRectangularLap(cost);
  const auto slow = BruteForceLap(cost);
  EXPECT_NEAR(fast.objective, slow.objective, 1e-9);
  EXPECT_TRUE(IsInjective(fast.assignment, 6));
}

TEST(SolveRectangularLapTest, PrefersOutlierColumnsWhenCheaper) {
  // Rows 0 and 1 both want column 0; the rectangular slack column 2 takes one.
  const auto cost = CostMatrix::FromRows({{0, 10, 1}, {0, 10, 5}});
  const auto result = SolveRectangularLap(cost);
  EXPECT_EQ(result.assignment, (Assignment{2, 0}));
  EXPECT_EQ(result.objective, 1.0);
}

TEST(SolveRectangularLapTest, HandlesNegativeAndLargeCosts) {
  const auto cost =
      CostMatrix::FromRows({{-1e6, 3, 0}, {2, -708.4, 1e12}, {5, 5, -5}});
  const auto result = SolveRectangularLap(cost);
  EXPECT_EQ(result.assignment, (Assignment{0, 1, 2}));
  EXPECT_DOUBLE_EQ(result.objective, -1e6 - 708.4 - 5);
}

TEST(SolveRectangularLapTest, DeterministicForIdenticalInput) {
  // All-equal costs: every injection is optimal.
  const auto cost = CostMatrix(4, 6, std::vector<double>(24, 1.0));
  const auto first = SolveRectangularLap(cost);
  for (int k = 0; k < 5; ++k) {
    EXPECT_EQ(SolveRectangularLap(cost).assignment, first.assignment);
  }
}

TEST(BruteForceLapTest, OneByOne) {
  const auto result = BruteForceLap(CostMatrix::FromRows({{0}}));
  EXPECT_EQ(result.assignment, (Assignment{0}));
  EXPECT_EQ(result.objective, 0.0);
}

TEST(BruteForceLapTest, TieBrokenLexicographically) {
  // Both injections cost 5.
  const auto result = BruteForceLap(CostMatrix::FromRows({{1, 2}, {3, 4}}));
  EXPECT_EQ(result.assignment, (Assignment{0, 1}));
  EXPECT_EQ(result.objective, 5.0);
}

TEST(BruteForceLapTest, RecoversZeroCostPermutation) {
  const Assignment sigma{2, 0, 1};
  std::vector<std::vector<double>> rows(3, std::vector<double>(3, 1.0));
  for (std::size_t i = 0; i < 3; ++i) rows[i][sigma[i]] = 0.0;
  const auto result = BruteForceLap(CostMatrix::FromRows(rows));
  EXPECT_EQ(result.assignment, sigma);
  EXPECT_EQ(result.objective, 0.0);
}

TEST(BruteForceLapTest, EnforcesSizeGuard) {
  EXPECT_THROW(BruteForceLap(CostMatrix(9, 9, std::vector<double>(81, 0.0))),
               InvalidInput);
  EXPECT_THROW(BruteForceLap(CostMatrix(2, 11, std::vector<double>(22, 0.0))),
               InvalidInput);
  EXPECT_NO_THROW(BruteForceLap(CostMatrix(3, 10, std::vector<double>(30, 0.0))));
}

// Property: the solver agrees with exhaustive search and returns an
// injective assignment whose objective is the recomputed cost.
TEST(SolveRectangularLapProperty, MatchesBruteForceOnRandomInstances) {
  std::mt19937_64 gen(20260101);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + gen() % 6;
    const std::size_t m = n + gen() % (9 - n);
    // Mix continuous costs with coarse integer costs that produce ties.
    const auto cost = trial % 2 == 0 ? RandomCost(gen, n, m)
                                     : [&] {
                                         std::vector<double> v(n * m);
                                         for (double& x : v) x = double(gen() % 4);
                                         return CostMatrix(n, m, v);
                                       }();
    const auto fast = SolveRectangularLap(cost);
    const auto slow = BruteForceLap(cost);
    ASSERT_TRUE(IsInjective(fast.assignment, m));
    ASSERT_LE(std::abs(fast.objective - slow.objective),
              1e-9 * (1.0 + std::abs(slow.objective)))
        << "n=" << n << " m=" << m << " trial=" << trial;
    ASSERT_LE(std::abs(fast.objective - AssignmentCost(cost, fast.assignment)),
              1e-9 * (1.0 + std::abs(fast.objective)));
  }
}

TEST(SolveRectangularLapProperty, RowShiftMovesObjectiveAndKeepsOptimality) {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + gen() % 5;
    const std::size_t m = n + gen() % 3;
    const auto cost = RandomCost(gen, n, m);
    const std::size_t row = gen() % n;
    // Power of two keeps the shift exact in binary.
    const double shift = 0.5;
    std::vector<double> values = cost.values();
    for (std::size_t j = 0; j < m; ++j) values[row * m + j] += shift;
    const CostMatrix shifted(n, m, values);

    const auto base = BruteForceLap(cost);
    const auto moved = BruteForceLap(shifted);
    EXPECT_NEAR(moved.objective - base.objective, shift, 1e-12);
    const auto solved = SolveRectangularLap(shifted);
    EXPECT_NEAR(AssignmentCost(shifted, solved.assignment), moved.objective,
                1e-12);
    // The solver's choice on the original matrix stays optimal after shifting.
    const auto original = SolveRectangularLap(cost);
    EXPECT_NEAR(AssignmentCost(shifted, original.assignment), moved.objective,
                1e-12);
  }
}

TEST(SolveRectangularLapProperty, RelabelingIsEquivariant) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + gen() % 6;
    const std::size_t m = n + gen() % 3;
    const auto cost = RandomCost(gen, n, m);
    std::vector<std::size_t> rho(n), tau(m);
    std::iota(rho.begin(), rho.end(), 0);
    std::iota(tau.begin(), tau.end(), 0);
    std::shuffle(rho.begin(), rho.end(), gen);
    std::shuffle(tau.begin(), tau.end(), gen);
    // permuted(rho[i], tau[j]) = cost(i, j)
    std::vector<double> values(n * m);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) values[rho[i] * m + tau[j]] = cost(i, j);
    }
    const CostMatrix permuted(n, m, values);
    const auto a = SolveRectangularLap(cost);
    const auto b = SolveRectangularLap(permuted);
    EXPECT_NEAR(a.objective, b.objective, 1e-12);
    // Continuous random costs make the optimum unique almost surely.
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_EQ(b.assignment[rho[i]], tau[a.assignment[i]]);
    }
  }
}

TEST(SolveRectangularLapTest, LargerInstanceIsInjectiveAndNoWorseThanGreedyRows) {
  std::mt19937_64 gen(3);
  const auto cost = RandomCost(gen, 100, 130);
  const auto result = SolveRectangularLap(cost);
  ASSERT_TRUE(IsInjective(result.assignment, 130));
  // A feasible alternative: each row takes its cheapest still-free column.
  std::vector<char> used(130, 0);
  double greedy = 0.0;
  for (std::size_t i = 0; i < 100; ++i) {
    std::size_t best = 130;
    for (std::size_t j = 0; j < 130; ++j) {
      if (!used[j] && (best == 130 || cost(i, j) < cost(i, best))) best = j;
    }
    used[best] = 1;
    greedy += cost(i, best);
  }
  EXPECT_LE(result.objective, greedy + 1e-12);
}

}  // namespace
}  // namespace matchmap
