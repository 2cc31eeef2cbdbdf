// Copyright 2026 The gsp Authors
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

#include "gsp/thresholds.hpp"

#include <cmath>

#include "gtest/gtest.h"

namespace gsp {
namespace {

template <typename F>
double FlipPoint(F pred, double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (pred(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

TEST(ZThresholdTest, LrClosedForm) {
  EXPECT_NEAR(ZLrThreshold(), 0.29289321881345254, 1e-15);
  EXPECT_DOUBLE_EQ(ZLrThresholdFidelity(4), 0.25);
  EXPECT_DOUBLE_EQ(ZLrThresholdFidelity(2), 0.5);
  for (int n : {2, 4, 6}) EXPECT_NEAR(std::pow(1 - ZLrThreshold(), n), ZLrThresholdFidelity(n), 1e-12);
}

TEST(ZThresholdTest, General) {
  EXPECT_NEAR(ZGeneralThreshold(1), ZLrThreshold(), 1e-10);
  EXPECT_NEAR(ZGeneralThreshold(2), 0.352, 5e-4);
  EXPECT_NEAR(ZGeneralThreshold(5), 0.413, 5e-4);
  EXPECT_THROW(ZGeneralThreshold(0), std::invalid_argument);
}

TEST(ZThresholdTest, IncreasesTowardHalf) {
  double prev = 0;
  for (int d = 1; d <= 40; ++d) {
    double t = ZGeneralThreshold(d);
    EXPECT_GT(t, prev);
    EXPECT_LT(t, 0.5);
    prev = t;
  }
  EXPECT_GT(prev, 0.45);
}

TEST(ZThresholdTest, BracketsSignChange) {
  for (int d = 1; d <= 8; ++d) {
    double t = ZGeneralThreshold(d);
    EXPECT_FALSE(ZGeneralImpossible(d, t - 1e-9));
    EXPECT_TRUE(ZGeneralImpossible(d, t + 1e-9));
  }
}

TEST(CriticalTemperatureTest, Values) {
  EXPECT_NEAR(CriticalTemperature(1), 1.1345926571065, 1e-12);
  EXPECT_DOUBLE_EQ(CriticalTemperature(2), 2 * CriticalTemperature(1));
  EXPECT_THROW(CriticalTemperature(0), std::invalid_argument);
}

TEST(CriticalTemperatureTest, RoundTrip) {
  for (double delta : {0.5, 1.0, 2.0}) {
    double beta = 1 / CriticalTemperature(delta);
    EXPECT_NEAR(ThermalFlipProbability(beta, delta), ZLrThreshold(), 1e-12);
    DiagonalState s = FromNoise(MakeNamed("chain:1"), noise::Thermal{beta, delta});
    EXPECT_NEAR(s[1], ZLrThreshold(), 1e-12);
  }
}

TEST(GhzReductionTest, Examples) {
  GhzReduction pure = GhzReductionState(3, 0);
  EXPECT_DOUBLE_EQ(pure.full.fidelity(), 1.0);
  EXPECT_DOUBLE_EQ(pure.pair.l[0], 1.0);
  double p = 0.2, q = 0.8;
  GhzReduction one = GhzReductionState(1, p);
  double norm = q + p;
  EXPECT_NEAR(one.pair.l[0], q * q / norm, 1e-15);
  EXPECT_NEAR(one.pair.l[1], p * q / norm, 1e-15);
  EXPECT_NEAR(one.pair.l[2], p * p / norm, 1e-15);
  EXPECT_NEAR(one.pair.l[3], q * p / norm, 1e-15);
}

TEST(GhzReductionTest, MatchesStarSimulation) {
  for (int d = 1; d <= 5; ++d) {
    for (double p : {0.05, 0.2, 0.4}) {
      Graph star = MakeNamed("star:" + std::to_string(d + 1));
      noise::Pattern pat;
      pat.per_qubit.assign(d + 1, PauliRates{0, 0, p});
      pat.per_qubit[0] = {0, p, 0};
      pat.per_qubit[1] = {p, 0, 0};
      DiagonalState want = FromNoise(star, pat);
      DiagonalState got = GhzReductionState(d, p).full;
      for (size_t j = 0; j < want.size(); ++j) EXPECT_NEAR(got[j], want[j], 1e-12) << d << " " << j;
    }
  }
}

TEST(GhzReductionTest, PairFlipsAtGeneralThreshold) {
  for (int d = 1; d <= 6; ++d) {
    double flip = FlipPoint([d](double p) { return !PairPurifiable(GhzReductionState(d, p).pair); }, 0.01, 0.49);
    EXPECT_NEAR(flip, ZGeneralThreshold(d), 1e-8);
  }
}

TEST(GlobalDepolTest, Threshold) {
  EXPECT_DOUBLE_EQ(GlobalDepolThreshold(2), 0.5);
  EXPECT_DOUBLE_EQ(GlobalDepolThreshold(5), 3.0 / 34);
  EXPECT_DOUBLE_EQ(GlobalDepolThreshold(10), 3.0 / 1026);
  // x = 2 is the threshold for every N.
  for (int n = 2; n <= 12; ++n) EXPECT_DOUBLE_EQ(GlobalDepolarized(n, 2).fidelity(), GlobalDepolThreshold(n));
}

TEST(GlobalDepolTest, InductiveMixing) {
  for (int n = 2; n <= 8; ++n) {
    for (double x : {0.0, 1.0, 2.0, 7.0}) EXPECT_TRUE(CheckInductiveMixing(n, x)) << n << " " << x;
  }
}

TEST(GlobalDepolTest, EdgeReductionExact) {
  for (int n = 2; n <= 10; ++n) {
    double x = 5;
    DiagonalState s = GlobalDepolarized(n, x);
    TwoQubitDiag pair = ReduceToEdge(s, 0, n - 1);
    DiagonalState want = GlobalDepolarized(2, x / std::ldexp(1.0, n - 2));
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(pair.l[i], want[i], 1e-15);
  }
}

TEST(PartitionThresholdTest, ChainThree) {
  Graph g = MakeNamed("chain:3");
  ThresholdResult r = PartitionThreshold(g, DepolFamily(), {bit(0)});
  EXPECT_NEAR(r.value, 0.332, 5e-4);
  double cubic_root = FlipPoint([](double p) { return Chain3DepolCubic(p) <= 0; }, 0.2, 0.5);
  EXPECT_NEAR(r.value, cubic_root, 1e-9);
  EXPECT_NE(r.witness.find("(0,1)"), std::string::npos);
}

TEST(PartitionThresholdTest, ChainThreeCubicSignMatchesConditional) {
  // Environment syndrome 0 on qubit 2: the conditional pair (0, 1) is
  // entangled exactly when the cubic is positive.
  Graph g = MakeNamed("chain:3");
  for (int i = 1; i < 75; ++i) {
    double p = 0.01 * i;
    if (std::abs(Chain3DepolCubic(p)) < 1e-9) continue;
    DiagonalState s = FromNoise(g, noise::Depol{p});
    double a = s[0], b = s[1], c = s[2], d = s[3];
    double cond_max = std::max(std::max(a, b), std::max(c, d)) / (a + b + c + d);
    EXPECT_EQ(cond_max > 0.5, Chain3DepolCubic(p) > 0) << p;
  }
}

TEST(PartitionThresholdTest, BracketsSignChange) {
  Graph g = MakeNamed("chain:5");
  Bipartition cut{0b00011};
  ThresholdResult r = PartitionThreshold(g, DepolFamily(), cut);
  auto crossing = CrossingEdges(g, cut);
  EXPECT_FALSE(AllCrossingConditionalsSeparable(FromNoise(g, noise::Depol{r.value - 1e-8}), crossing));
  EXPECT_TRUE(AllCrossingConditionalsSeparable(FromNoise(g, noise::Depol{r.value + 1e-8}), crossing));
}

TEST(PartitionThresholdTest, ZNoiseOnChainIsLrThreshold) {
  // Z weights are symmetric about p = 1/2, so the bracket stops there.
  ThresholdResult r = PartitionThreshold(MakeNamed("chain:4"), ZFamily(), {0b0011}, 0.5 - 1e-9);
  EXPECT_NEAR(r.value, ZLrThreshold(), 1e-9);
}

TEST(PartitionThresholdTest, DepolExceedsZ) {
  EXPECT_GT(PartitionThreshold(MakeNamed("chain:2"), DepolFamily(), {bit(0)}).value, ZLrThreshold());
  double two = PartitionThreshold(MakeNamed("chain:2"), DepolFamily(), {bit(0)}).value;
  EXPECT_NEAR((1 - two) * (1 - two) + two * two / 3, 0.5, 1e-9);
}

TEST(PartitionThresholdTest, Steane) {
  Graph g = MakeNamed("file:tests/data/steane.edges");
  ThresholdResult r = BestLrPartitionThreshold(g, DepolFamily(), 4);
  EXPECT_NEAR(r.value, 0.403, 5e-3);
}

TEST(PartitionThresholdTest, Errors) {
  EXPECT_THROW(PartitionThreshold(Graph(3), DepolFamily(), {bit(0)}), std::invalid_argument);
  EXPECT_THROW(BestLrPartitionThreshold(MakeNamed("icosahedron"), DepolFamily()), std::invalid_argument);
}

TEST(ChainSweepTest, FirstNMinusOneNoisyIsNonIncreasing) {
  auto rows = DepolChainSweep(3, 10, 4);
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_NEAR(rows[0].all_noisy, PartitionThreshold(MakeNamed("chain:3"), DepolFamily(), {bit(0)}).value, 1e-9);
  for (size_t i = 1; i < rows.size(); ++i) {
    EXPECT_LE(rows[i].first_n1_noisy, rows[i - 1].first_n1_noisy + 1e-9) << rows[i].n;
    EXPECT_GT(rows[i].all_noisy, ZLrThreshold());
  }
}

}  // namespace
}  // namespace gsp
