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

#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "matchmap/error.h"
#include "matchmap/random.h"
#include "test_util.h"

namespace matchmap {
namespace {

using ::matchmap::testing::MinPairRatio;
using ::matchmap::testing::NearRelative;
using ::matchmap::testing::RandomVectors;

SeparationReport OracleSeparation(const InstanceParams& p) {
  const auto inlier = p.InlierMask();
  SeparationReport r;
  const double in_in = MinPairRatio(p.theta_sharp(), p.sigma_sharp(),
                                    [&](auto i, auto j) { return inlier[i] && inlier[j]; });
  const double in_out = MinPairRatio(p.theta_sharp(), p.sigma_sharp(),
                                     [&](auto i, auto j) { return inlier[i] && !inlier[j]; });
  if (std::isfinite(in_in)) r.kappa_in_in = in_in;
  if (std::isfinite(in_out)) r.kappa_in_out = in_out;
  return r;
}

TEST(ComputeSeparationTest, CounterexampleIsOne) {
  const auto s = ComputeSeparation(CounterexampleInstance(4, 20));
  ASSERT_TRUE(s.kappa_in_in && s.kappa_in_out);
  EXPECT_TRUE(NearRelative(*s.kappa_in_in, 1.0, 1e-12));
  EXPECT_TRUE(NearRelative(*s.kappa_in_out, 1.0, 1e-12));
}

TEST(ComputeSeparationTest, IdenticalInliersGiveZero) {
  const InstanceParams p(VectorSet::FromRows({{1, 2}, {1, 2}, {5, 5}}), {1, 2, 1},
                         {0, 1});
  EXPECT_EQ(*ComputeSeparation(p).kappa_in_in, 0.0);
}

TEST(ComputeSeparationTest, Experiment2SmallMatchesEnumeration) {
  const auto p = Experiment2Instance(3, 4, 2, 1.0, 1.0);
  const auto s = ComputeSeparation(p);
  EXPECT_TRUE(NearRelative(*s.kappa_in_in, 0.9428090415820635, 1e-12));
  EXPECT_TRUE(NearRelative(*s.kappa_in_out, 2.976833630141003, 1e-12));
}

TEST(ComputeSeparationTest, NoOutliersMeansAbsentInOut) {
  const InstanceParams p(VectorSet::FromRows({{0}, {3}}), {1, 1}, {1, 0});
  const auto s = ComputeSeparation(p);
  EXPECT_FALSE(s.kappa_in_out.has_value());
  EXPECT_TRUE(NearRelative(*s.kappa_in_in, 3.0 / std::sqrt(2.0), 1e-15));
  EXPECT_EQ(s.Min(), *s.kappa_in_in);
}

TEST(ComputeSeparationTest, SingleInlierMeansAbsentInIn) {
  const InstanceParams p(VectorSet::FromRows({{0}, {4}}), {1, 1}, {0});
  const auto s = ComputeSeparation(p);
  EXPECT_FALSE(s.kappa_in_in.has_value());
  EXPECT_TRUE(NearRelative(*s.kappa_in_out, 4.0 / std::sqrt(2.0), 1e-15));
}

TEST(ComputeSeparationProperty, AgreesWithPairwiseEnumeration) {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = 2 + gen() % 49;
    const std::size_t n = 1 + gen() % m;
    const std::size_t d = 1 + gen() % 6;
    std::vector<std::size_t> slots(m);
    for (std::size_t j = 0; j < m; ++j) slots[j] = j;
    std::shuffle(slots.begin(), slots.end(), gen);
    slots.resize(n);
    std::vector<double> sigma(m);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    for (double& s : sigma) s = u(gen);
    const InstanceParams p(RandomVectors(gen, m, d), sigma, slots);
    const auto got = ComputeSeparation(p);
    const auto want = OracleSeparation(p);
    ASSERT_EQ(got.kappa_in_in.has_value(), want.kappa_in_in.has_value());
    ASSERT_EQ(got.kappa_in_out.has_value(), want.kappa_in_out.has_value());
    if (want.kappa_in_in) {
      EXPECT_TRUE(NearRelative(*got.kappa_in_in, *want.kappa_in_in, 1e-12));
    }
    if (want.kappa_in_out) {
      EXPECT_TRUE(NearRelative(*got.kappa_in_out, *want.kappa_in_out, 1e-12));
    }
  }
}

TEST(ComputeSeparationProperty, ScaleEquivariant) {
  for (Seed seed = 0; seed < 10; ++seed) {
    const auto p = Experiment1Instance(8, 11, 4, seed);
    const double lambda = 0.3 + static_cast<double>(seed);
    VectorSet theta = p.theta_sharp();
    for (std::size_t j = 0; j < theta.size(); ++j) for (double& v : theta[j]) v *= lambda;
    std::vector<double> sigma = p.sigma_sharp();
    for (double& s : sigma) s *= lambda;
    const auto a = ComputeSeparation(p);
    const auto b = ComputeSeparation(InstanceParams(theta, sigma, p.pi_star()));
    EXPECT_TRUE(NearRelative(*a.kappa_in_in, *b.kappa_in_in, 1e-12));
    EXPECT_TRUE(NearRelative(*a.kappa_in_out, *b.kappa_in_out, 1e-12));
  }
}

TEST(ThresholdLsnsTest, ReferenceValue) {
  EXPECT_NEAR(ThresholdLsns(100, 130, 50, 0.05), 21.57619314090602, 1e-12);
  EXPECT_NEAR(ThresholdLsns(20, 24, 16, 0.05), 18.972788867542494, 1e-12);
}

TEST(ThresholdLsnsTest, Monotonicity) {
  double prev = 0.0;
  for (std::size_t d = 1; d <= 4096; d *= 2) {
    const double t = ThresholdLsns(100, 130, d, 0.05);
    EXPECT_GE(t, prev);
    prev = t;
  }
  prev = 1e300;
  for (double alpha : {0.001, 0.01, 0.05, 0.1, 0.5, 0.9}) {
    const double t = ThresholdLsns(100, 130, 50, alpha);
    EXPECT_LE(t, prev);
    prev = t;
  }
}

TEST(ThresholdLsnsTest, RejectsBadAlpha) {
  EXPECT_THROW(ThresholdLsns(1, 1, 1, 0.0), InvalidInput);
  EXPECT_THROW(ThresholdLsns(1, 1, 1, 1.0), InvalidInput);
  EXPECT_THROW(ThresholdLsns(2, 1, 1, 0.5), InvalidInput);
}

TEST(ThresholdLslTest, ReferenceValue) {
  EXPECT_NEAR(ThresholdLsl(100, 130, 50, 0.05), 36.425331893479026, 1e-12);
  EXPECT_NEAR(ThresholdLsl(20, 24, 16, 0.05), 28.893680111010486, 1e-12);
}

TEST(ThresholdLslTest, RejectsAlphaAtOrAboveHalf) {
  EXPECT_THROW(ThresholdLsl(10, 12, 5, 0.6), InvalidInput);
  EXPECT_THROW(ThresholdLsl(10, 12, 5, 0.5), InvalidInput);
  EXPECT_NO_THROW(ThresholdLsl(10, 12, 5, 0.49));
}

TEST(ThresholdLslTest, ExceedsLsnsOnGrid) {
  for (std::size_t n : {1, 10, 100}) {
    for (std::size_t extra : {0, 5, 50}) {
      for (std::size_t d : {1, 2, 16, 100, 1000, 10000}) {
        for (double alpha : {0.001, 0.05, 0.25, 0.49}) {
          EXPECT_GT(ThresholdLsl(n, n + extra, d, alpha),
                    ThresholdLsns(n, n + extra, d, alpha));
        }
      }
    }
  }
}

// Growth orders: LSL ~ sqrt(d), LSNS ~ (d log(4nm/alpha))^(1/4).
TEST(ThresholdProperty, GrowthRates) {
  for (std::size_t d : {64, 256, 1024}) {
    const double lsl = ThresholdLsl(100, 100, d, 0.05);
    const double lsns = ThresholdLsns(100, 100, d, 0.05);
    const double quartic = std::pow(d * std::log(4.0 * 100 * 100 / 0.05), 0.25);
    EXPECT_GE(lsl / std::sqrt(double(d)), 1.0);
    EXPECT_LE(lsl / std::sqrt(double(d)), 15.0);
    EXPECT_GE(lsns / quartic, 4.0);
    EXPECT_LE(lsns / quartic, 8.1);
  }
}

TEST(ThresholdMildTest, ReferenceValues) {
  const auto t = ThresholdMild(100, 130, 50, 0.05, 4.0);
  EXPECT_NEAR(t.t_in_in, 25.03861080410435, 1e-12);
  EXPECT_NEAR(t.t_in_out, 67.39772968389748, 1e-12);
  EXPECT_EQ(t.regime, Regime::kMildHetero);
}

TEST(ThresholdMildTest, HomoscedasticLimitMatchesInIn) {
  const auto t = ThresholdMild(100, 130, 50, 0.05, 1.0);
  EXPECT_NEAR(t.t_in_out, t.t_in_in, 1e-12);
}

TEST(ThresholdMildTest, NondecreasingInRatio) {
  double prev = 0.0;
  for (double r = 1.0; r <= 20.0; r += 0.5) {
    const auto t = ThresholdMild(30, 40, 10, 0.1, r);
    EXPECT_GE(t.t_in_out, prev);
    prev = t.t_in_out;
  }
  EXPECT_THROW(ThresholdMild(30, 40, 10, 0.1, 0.99), InvalidInput);
}

TEST(ThresholdsTest, ContainsUsesBothAxes) {
  const Thresholds t{2.0, 3.0, 0.05, Regime::kMildHetero};
  EXPECT_TRUE(t.Contains({2.0, 3.0}));
  EXPECT_FALSE(t.Contains({1.9, 30.0}));
  EXPECT_FALSE(t.Contains({20.0, 2.9}));
  EXPECT_TRUE(t.Contains({2.5, std::nullopt}));
}

TEST(NoiseRatioTest, MaxOverMin) {
  EXPECT_EQ(NoiseRatio(CounterexampleInstance(4, 20)), 16.0);
}

TEST(HammingLossTest, Basics) {
  const std::vector<std::size_t> id{0, 1, 2};
  EXPECT_EQ(HammingLoss(id, id), 0u);
  EXPECT_EQ(HammingLoss(id, std::vector<std::size_t>{1, 0, 2}), 2u);
  EXPECT_THROW(HammingLoss(id, std::vector<std::size_t>{0, 1}), InvalidInput);
}

TEST(HammingLossProperty, RangeAndIdentity) {
  std::mt19937_64 gen(41);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + gen() % 8;
    std::vector<std::size_t> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = gen() % 3, b[i] = gen() % 3;
    const auto loss = HammingLoss(a, b);
    EXPECT_LE(loss, n);
    EXPECT_EQ(loss == 0, a == b);
  }
}

TEST(ChiSquareTailTest, ReferenceValue) {
  const auto dev = ChiSquareTail(100, std::log(20.0));
  EXPECT_NEAR(dev.lower, 34.6163676520457, 1e-12);
  EXPECT_NEAR(dev.upper, 34.6163676520457 + 2 * std::log(20.0), 1e-12);
}

TEST(ChiSquareTailTest, VanishesAsXGoesToZero) {
  const auto dev = ChiSquareTail(50, 1e-14);
  EXPECT_LT(dev.lower, 1e-5);
  EXPECT_LT(dev.upper, 1e-5);
  EXPECT_THROW(ChiSquareTail(0, 1.0), InvalidInput);
  EXPECT_THROW(ChiSquareTail(5, 0.0), InvalidInput);
}

TEST(ChiSquareTailTest, MonteCarloLowerTail) {
  Rng rng(99);
  const std::size_t d = 100;
  const int draws = 100000;
  const double lower = ChiSquareTail(d, std::log(20.0)).lower;
  int hits = 0;
  for (int k = 0; k < draws; ++k) {
    double y = 0.0;
    for (std::size_t c = 0; c < d; ++c) {
      const double z = rng.Gaussian();
      y += z * z;
    }
    if (y - static_cast<double>(d) <= -lower) ++hits;
  }
  const double sd = std::sqrt(0.05 * 0.95 / draws);
  EXPECT_LE(static_cast<double>(hits) / draws, 0.05 + 3 * sd);
}

}  // namespace
}  // namespace matchmap
