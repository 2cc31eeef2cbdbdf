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

#include "gsp/gmpp.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"

namespace gsp {
namespace {

ColoredState Colored(const std::string& graph, const NoiseSpec& spec) {
  Graph g = MakeNamed(graph);
  return ColoredState(g, FromNoise(g, spec), TwoColoring(g)->first);
}

// The P1 sum written out over full indices: for every pair of syndromes with
// matching A parts, the XOR of the B parts receives the product.
std::vector<double> NaiveP1(const ColoredState& cs) {
  size_t r = cs.rows(), c = cs.cols();
  std::vector<double> out(r * c, 0.0);
  for (size_t a = 0; a < r; ++a) {
    for (size_t b1 = 0; b1 < c; ++b1) {
      for (size_t b2 = 0; b2 < c; ++b2) out[a * c + (b1 ^ b2)] += cs.at(a, b1) * cs.at(a, b2);
    }
  }
  double t = 0;
  for (double x : out) t += x;
  for (double& x : out) x /= t;
  return out;
}

TEST(P1StepTest, HandExample) {
  auto cs = ColoredState::FromMatrix(1, 1, {0.6, 0.2, 0.1, 0.1});
  auto [next, p] = P1Step(cs);
  EXPECT_NEAR(p, 0.68, 1e-15);
  EXPECT_NEAR(next.at(0, 0), 0.40 / 0.68, 1e-15);
  EXPECT_NEAR(next.at(0, 1), 0.24 / 0.68, 1e-15);
  EXPECT_NEAR(next.at(1, 0), 0.02 / 0.68, 1e-15);
  EXPECT_NEAR(next.at(1, 1), 0.02 / 0.68, 1e-15);
  EXPECT_NEAR(next.fidelity(), 0.5882, 1e-4);
}

TEST(P2StepTest, SwappedColorsMirrorP1) {
  // Transposing the matrix swaps the roles of A and B.
  auto cs = ColoredState::FromMatrix(1, 1, {0.6, 0.1, 0.2, 0.1});
  auto [next, p] = P2Step(cs);
  EXPECT_NEAR(p, 0.68, 1e-15);
  EXPECT_NEAR(next.at(0, 0), 0.40 / 0.68, 1e-15);
  EXPECT_NEAR(next.at(1, 0), 0.24 / 0.68, 1e-15);
  EXPECT_NEAR(next.at(0, 1), 0.02 / 0.68, 1e-15);
}

TEST(P1StepTest, MatchesNaiveSum) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 1);
  for (auto [na, nb] : {std::pair{1, 1}, {2, 3}, {3, 2}, {1, 7}}) {
    std::vector<double> m(size_t{1} << (na + nb));
    for (double& x : m) x = u(rng);
    double t = 0;
    for (double x : m) t += x;
    for (double& x : m) x /= t;
    auto cs = ColoredState::FromMatrix(na, nb, m);
    auto got = P1Step(cs).first.matrix();
    auto want = NaiveP1(cs);
    for (size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-14);
  }
}

TEST(P1StepTest, LongRowsUseTransformPath) {
  // 2^7 columns is past the direct-sum cutoff.
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> m(size_t{1} << 9);
  for (double& x : m) x = u(rng);
  double t = 0;
  for (double x : m) t += x;
  for (double& x : m) x /= t;
  auto cs = ColoredState::FromMatrix(2, 7, m);
  auto got = P1Step(cs).first.matrix();
  auto want = NaiveP1(cs);
  for (size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-14);
}

TEST(StepTest, PureAndUniformAreFixed) {
  auto pure = ColoredState(DiagonalState::Pure(4), 0b0101);
  for (Step s : {Step::P1, Step::P2}) {
    auto [next, p] = ApplyStep(pure, s);
    EXPECT_EQ(next.matrix(), pure.matrix());
    EXPECT_DOUBLE_EQ(p, 1.0);
  }
  auto uniform = ColoredState(GlobalDepolarized(4, 0), 0b0011);
  for (Step s : {Step::P1, Step::P2}) {
    ColoredState next = ApplyStep(uniform, s).first;
    for (double x : next.matrix()) EXPECT_EQ(x, 1.0 / 16);
  }
}

TEST(P2StepTest, ErrorsOnlyOnBSquaresTheMarginal) {
  // Noise only on B: the A index is always 0 and P2 squares each entry.
  Graph g = MakeNamed("chain:3");  // A = {0, 2}, B = {1}
  noise::Pattern pat;
  pat.per_qubit = {{0, 0, 0}, {0, 0, 0.3}, {0, 0, 0}};
  ColoredState cs(g, FromNoise(g, pat), 0b101);
  auto next = P2Step(cs).first;
  double norm = 0.7 * 0.7 + 0.3 * 0.3;
  EXPECT_NEAR(next.at(0, 0), 0.49 / norm, 1e-15);
  EXPECT_NEAR(next.at(0, 1), 0.09 / norm, 1e-15);
  for (size_t a = 1; a < next.rows(); ++a) EXPECT_EQ(next.at(a, 0) + next.at(a, 1), 0.0);
}

TEST(P1StepTest, NoBQubitsSquaresEntries) {
  auto cs = ColoredState::FromMatrix(2, 0, {0.4, 0.3, 0.2, 0.1});
  auto next = P1Step(cs).first;
  EXPECT_NEAR(next.at(0, 0), 0.16 / 0.30, 1e-15);
  EXPECT_NEAR(next.at(3, 0), 0.01 / 0.30, 1e-15);
}

TEST(StepTest, NormalizationPreserved) {
  ColoredState cs = Colored("grid:2x3", noise::Depol{0.2});
  std::mt19937_64 rng(4);
  for (int i = 0; i < 40; ++i) {
    cs = ApplyStep(cs, rng() & 1 ? Step::P1 : Step::P2).first;
    double t = 0;
    for (double x : cs.matrix()) t += x;
    EXPECT_NEAR(t, 1, 1e-12);
  }
}

TEST(StepTest, GeometryIndependence) {
  // chain:4 and cycle:4 share the split A = {0, 2}. The 2x2 grid has
  // A = {0, 3}; its weights are moved so the packed matrices line up.
  Graph chain = MakeNamed("chain:4"), cycle = MakeNamed("cycle:4"), grid = MakeNamed("grid:2x2");
  DiagonalState s = FromNoise(chain, noise::Depol{0.27});
  ColoredState a(chain, s, 0b0101), b(cycle, s, 0b0101);
  // Qubit map chain -> grid: 0->0, 2->3, 1->1, 3->2 keeps the packed order.
  std::vector<int> to_grid = {0, 1, 3, 2};
  std::vector<double> l(s.size());
  for (size_t j = 0; j < s.size(); ++j) {
    size_t k = 0;
    for (int q = 0; q < 4; ++q) k |= ((j >> q) & 1) << to_grid[q];
    l[k] = s[j];
  }
  ColoredState c(grid, DiagonalState(4, l), 0b1001);
  ASSERT_EQ(a.matrix(), c.matrix());
  for (Step st : {Step::P1, Step::P2, Step::P1, Step::P1, Step::P2}) {
    a = ApplyStep(a, st).first;
    b = ApplyStep(b, st).first;
    c = ApplyStep(c, st).first;
    EXPECT_EQ(a.matrix(), b.matrix());
    EXPECT_EQ(a.matrix(), c.matrix());
  }
}

TEST(StepTest, CommutesWithRelabelingWithinAColor) {
  Graph g = MakeNamed("grid:2x3");  // A = {0, 2, 4}
  DiagonalState s = FromNoise(g, noise::Pattern{{{0.1, 0, 0.2}, {0, 0.3, 0}, {0.05, 0.05, 0.05}, {0, 0, 0.2}}});
  Mask a_mask = TwoColoring(g)->first;
  // Swap the A qubits 0 and 4 in the syndrome.
  auto swap04 = [](const std::vector<double>& l) {
    std::vector<double> out(l.size());
    for (size_t j = 0; j < l.size(); ++j) {
      size_t b0 = j & 1, b4 = (j >> 4) & 1;
      out[(j & ~size_t{0b10001}) | (b0 << 4) | b4] = l[j];
    }
    return out;
  };
  ColoredState x(s, a_mask), y(DiagonalState(6, swap04(s.lambda())), a_mask);
  for (Step st : {Step::P1, Step::P2, Step::P2, Step::P1}) {
    x = ApplyStep(x, st).first;
    y = ApplyStep(y, st).first;
    auto want = swap04(x.ToDiagonal().lambda());
    auto got = y.ToDiagonal().lambda();
    for (size_t j = 0; j < got.size(); ++j) EXPECT_NEAR(got[j], want[j], 1e-15);
  }
}

TEST(ColoredStateTest, RejectsImproperColoring) {
  Graph g = MakeNamed("chain:3");
  EXPECT_THROW(ColoredState(g, DiagonalState::Pure(3), 0b011), std::invalid_argument);
  EXPECT_THROW(ColoredState(DiagonalState::Pure(3), 0b1000), std::invalid_argument);
}

TEST(ColoredStateTest, RoundTripsThroughDiagonal) {
  DiagonalState s = FromNoise(MakeNamed("cycle:6"), noise::Depol{0.1});
  ColoredState cs(s, 0b010101);
  DiagonalState back = cs.ToDiagonal();
  for (size_t j = 0; j < s.size(); ++j) EXPECT_NEAR(back[j], s[j], 1e-14);
}

TEST(RunSequenceTest, WernerAboveHalfImproves) {
  double f = 0.75, r = (1 - f) / 3;
  auto cs = ColoredState::FromMatrix(1, 1, {f, r, r, r});
  GmppTrace t = RunSequence(cs, ParseSequence("P1P2P1P2P1P2P1P2"));
  double prev = f;
  for (size_t i = 1; i < t.steps.size(); i += 2) {
    EXPECT_GT(t.steps[i].fidelity, prev);
    prev = t.steps[i].fidelity;
  }
  for (const auto& rec : t.steps) {
    EXPECT_GT(rec.success_prob, 0);
    EXPECT_LE(rec.success_prob, 1);
  }
}

TEST(RunSequenceTest, WernerAtHalfStaysBelowHalf) {
  double f = 0.5, r = (1 - f) / 3;
  auto cs = ColoredState::FromMatrix(1, 1, {f, r, r, r});
  GmppTrace t = RunSequence(cs, ParseSequence(std::string(40, '1') + std::string(40, '2')));
  for (const auto& rec : t.steps) EXPECT_LE(rec.fidelity, 0.5 + 1e-12);
}

TEST(RunSequenceTest, ParseAndErrors) {
  EXPECT_EQ(SequenceString(ParseSequence("P1,P2 12")), "P1P2P1P2");
  EXPECT_THROW(ParseSequence("P3"), std::invalid_argument);
  EXPECT_THROW(ParseSequence(""), std::invalid_argument);
  EXPECT_THROW(RunSequence(ColoredState::FromMatrix(1, 1, {1, 0, 0, 0}), {}), std::invalid_argument);
}

TEST(RunSequenceTest, Deterministic) {
  ColoredState cs = Colored("chain:5", noise::Depol{0.2});
  auto seq = ParseSequence("P1P2P2P1P1P2");
  EXPECT_EQ(RunSequence(cs, seq).final_state.matrix(), RunSequence(cs, seq).final_state.matrix());
}

TEST(SearchRegimeTest, GhzFiveGlobal) {
  Graph g = MakeNamed("star:5");
  ColoredState cs(g, FromNoise(g, noise::Global{2.024}), bit(0));
  GmppVerdict v = SearchRegime(cs);
  EXPECT_TRUE(v.purifiable);
}

TEST(SearchRegimeTest, ChainThreeDepol) {
  GmppVerdict v = SearchRegime(Colored("chain:3", noise::Depol{0.331}));
  EXPECT_TRUE(v.purifiable);
  EXPECT_GT(v.best_fidelity, 1 - 1e-9);
}

TEST(SearchRegimeTest, TwoQubitDepol) {
  EXPECT_TRUE(SearchRegime(Colored("chain:2", noise::Depol{0.31})).purifiable);
  EXPECT_FALSE(SearchRegime(Colored("chain:2", noise::Depol{0.33})).purifiable);
}

TEST(SearchRegimeTest, ChainFourAttractor) {
  SearchBudget b;
  b.threads = 4;
  EXPECT_TRUE(SearchRegime(Colored("chain:4", noise::Depol{0.28}), b).purifiable);
  GmppVerdict v = SearchRegime(Colored("chain:4", noise::Depol{0.31}), b);
  EXPECT_FALSE(v.purifiable);
  ASSERT_TRUE(v.attractor_k.has_value());
  EXPECT_EQ(*v.attractor_k, 2);
  EXPECT_NEAR(v.best_fidelity, 0.25, 1e-6);
}

TEST(SearchRegimeTest, MergeIsThreadIndependent) {
  ColoredState cs = Colored("chain:4", noise::Depol{0.3});
  SearchBudget one, many;
  many.threads = 8;
  GmppVerdict a = SearchRegime(cs, one), b = SearchRegime(cs, many);
  EXPECT_EQ(a.strategy, b.strategy);
  EXPECT_EQ(a.best_fidelity, b.best_fidelity);
  EXPECT_EQ(SequenceString(a.sequence), SequenceString(b.sequence));
}

TEST(SearchRegimeTest, TwoNoisyEndsOfChainFour) {
  // Z noise on the two end qubits only: the search behaves like a noisy pair.
  Graph g = MakeNamed("chain:4");
  auto at = [&](double p) {
    noise::Pattern pat;
    pat.per_qubit = {{0, 0, p}, {0, 0, 0}, {0, 0, 0}, {0, 0, p}};
    return SearchRegime(ColoredState(g, FromNoise(g, pat), 0b0101));
  };
  EXPECT_TRUE(at(0.25).purifiable);
  EXPECT_FALSE(at(0.35).purifiable);
}

}  // namespace
}  // namespace gsp
