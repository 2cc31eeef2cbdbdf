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

// Upper bounds on purification. Each solver finds the noise level at which a
// state that could rebuild the target becomes separable, so no protocol can
// purify beyond it.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gsp/diag_state.hpp"
#include "gsp/drpp.hpp"
#include "gsp/graph_core.hpp"
#include "gsp/numeric.hpp"
#include "gsp/parallel.hpp"

namespace gsp {

struct ThresholdResult {
  std::string model;
  std::string parameter;
  double value = 0;
  std::string witness;
  double tolerance = 0;
};

// Local Z noise on LR graphs: 1 - 1/sqrt(2).
inline double ZLrThreshold() { return 1 - 1 / std::sqrt(2.0); }

// The same threshold as a fidelity (1-p)^N = 2^{-N/2}.
inline double ZLrThresholdFidelity(int n) { return std::pow(2.0, -0.5 * n); }

// Impossible once 2(1-p)^{D+1} <= (1-p)^D + p^D.
inline bool ZGeneralImpossible(int d_min, double p) {
  return 2 * std::pow(1 - p, d_min + 1) <= std::pow(1 - p, d_min) + std::pow(p, d_min);
}

inline double ZGeneralThreshold(int d_min, double tol = 1e-12) {
  if (d_min < 1) throw std::invalid_argument("D_min must be >= 1");
  return Bisect([d_min](double p) { return ZGeneralImpossible(d_min, p); }, 1e-9, 0.5 - 1e-9, tol);
}

// Temperature at which thermal Z flips reach 1 - 1/sqrt(2), with k_B = 1.
inline double CriticalTemperature(double delta) {
  if (!(delta > 0)) throw std::invalid_argument("delta must be > 0");
  return -delta / std::log(std::sqrt(2.0) - 1);
}

struct GhzReduction {
  DiagonalState full;  // bit 0 center, bit 1 chosen leaf, bits 2.. other leaves
  TwoQubitDiag pair;   // the j = 0 block, normalized
};

// State left on a (D_min+1)-star after local Z noise is converted to X on the
// chosen leaf, Y on the center and Z on the other leaves.
inline GhzReduction GhzReductionState(int d_min, double p) {
  if (d_min < 1) throw std::invalid_argument("D_min must be >= 1");
  detail::CheckProb(p, "p");
  double q = 1 - p;
  int n = d_min + 1;
  std::vector<double> l(size_t{1} << n);
  for (size_t j = 0; j < (size_t{1} << (d_min - 1)); ++j) {
    int w = popcount(static_cast<Mask>(j));
    l[4 * j + 0] = std::pow(p, w) * std::pow(q, d_min + 1 - w);
    l[4 * j + 1] = std::pow(p, w + 1) * std::pow(q, d_min - w);
    l[4 * j + 2] = std::pow(q, w) * std::pow(p, d_min + 1 - w);
    l[4 * j + 3] = std::pow(q, w + 1) * std::pow(p, d_min - w);
  }
  double norm = std::pow(q, d_min) + std::pow(p, d_min);
  TwoQubitDiag pair{{std::pow(q, d_min + 1) / norm, p * std::pow(q, d_min) / norm,
                     std::pow(p, d_min + 1) / norm, q * std::pow(p, d_min) / norm}};
  return {DiagonalState(n, std::move(l)), pair};
}

// Threshold fidelity for global depolarizing noise: 3 / (2^N + 2).
inline double GlobalDepolThreshold(int n) {
  if (n < 2) throw std::invalid_argument("N must be >= 2");
  return 3.0 / (std::ldexp(1.0, n) + 2);
}

// Builds rho_N(x) from rho_{N-1}(x) plus a fresh qubit (bit 0) by mixing in
// Z-relabelings, and compares with rho_N(x).
inline bool CheckInductiveMixing(int n, double x, double tol = 1e-12) {
  if (n < 2) throw std::invalid_argument("N must be >= 2");
  DiagonalState prev = GlobalDepolarized(n - 1, x);
  size_t dim = size_t{1} << n, half = dim / 2;
  std::vector<double> extended(dim, 0.0);
  for (size_t j = 0; j < half; ++j) extended[2 * j] = prev[j];
  double p = (std::ldexp(1.0, n - 1) + x) / (std::ldexp(1.0, n) + x);
  std::vector<double> mix(dim, 0.0);
  for (size_t i = 0; i < dim; ++i) mix[i] += p * extended[i];
  double w = (1 - p) / static_cast<double>(half);
  for (size_t k = 0; k < half; ++k) {
    size_t flip = 1 | (k << 1);
    for (size_t i = 0; i < dim; ++i) mix[i ^ flip] += w * extended[i];
  }
  DiagonalState target = GlobalDepolarized(n, x);
  for (size_t i = 0; i < dim; ++i) {
    if (std::abs(mix[i] - target[i]) > tol) return false;
  }
  return true;
}

// Largest entry of the crossing pair (u, v) conditioned on the syndrome of
// every other qubit, minus half the conditional weight. Positive means some
// conditional pair is still entangled. Also reports where the max was found.
struct ConditionalMargin {
  double margin = -std::numeric_limits<double>::infinity();
  int u = -1, v = -1;
  size_t env = 0;
};

inline ConditionalMargin CrossingPairMargin(const DiagonalState& s, int u, int v) {
  ConditionalMargin out;
  out.u = u;
  out.v = v;
  int n = s.n();
  std::vector<int> env;
  for (int q = 0; q < n; ++q) {
    if (q != u && q != v) env.push_back(q);
  }
  size_t n_env = size_t{1} << env.size();
  std::vector<std::array<double, 4>> cond(n_env, {0, 0, 0, 0});
  for (size_t j = 0; j < s.size(); ++j) {
    size_t e = 0;
    for (size_t k = 0; k < env.size(); ++k) e |= ((j >> env[k]) & 1) << k;
    cond[e][((j >> u) & 1) | (((j >> v) & 1) << 1)] += s[j];
  }
  for (size_t e = 0; e < n_env; ++e) {
    double tot = cond[e][0] + cond[e][1] + cond[e][2] + cond[e][3];
    if (!(tot > 0)) continue;
    double mx = std::max(std::max(cond[e][0], cond[e][1]), std::max(cond[e][2], cond[e][3]));
    double m = mx / tot - 0.5;
    if (m > out.margin) {
      out.margin = m;
      out.env = e;
    }
  }
  return out;
}

using NoiseFamily = std::function<NoiseSpec(double)>;

inline NoiseFamily DepolFamily() {
  return [](double p) { return NoiseSpec{noise::Depol{p}}; };
}

// Depolarizing noise on the qubits of `noisy` only.
inline NoiseFamily DepolOnFamily(Mask noisy, int n) {
  return [noisy, n](double p) {
    noise::Pattern pat;
    pat.per_qubit.resize(static_cast<size_t>(n));
    for (int q = 0; q < n; ++q) {
      if ((noisy >> q) & 1) pat.per_qubit[q] = {p / 3, p / 3, p / 3};
    }
    return NoiseSpec{pat};
  };
}

inline NoiseFamily ZFamily() {
  return [](double p) { return NoiseSpec{noise::Z{p}}; };
}

// True iff every crossing pair is separable under every environment syndrome.
inline bool AllCrossingConditionalsSeparable(const DiagonalState& s,
                                             const std::vector<std::pair<int, int>>& crossing) {
  for (auto [u, v] : crossing) {
    if (CrossingPairMargin(s, u, v).margin > 1e-15) return false;
  }
  return true;
}

// Smallest noise level at which the partition's reconstruction seed, every
// environment-conditional crossing pair, is separable.
inline ThresholdResult PartitionThreshold(const Graph& g, const NoiseFamily& family, Bipartition part,
                                          double hi = 0.75 - 1e-9, double tol = 1e-10) {
  auto crossing = CrossingEdges(g, part);
  if (crossing.empty()) throw std::invalid_argument("partition has no crossing edge");
  auto separable = [&](double p) {
    return AllCrossingConditionalsSeparable(FromNoise(g, family(p)), crossing);
  };
  double p = Bisect(separable, 1e-9, hi, tol);
  ThresholdResult r{"partition", "p", p, "", tol};
  std::ostringstream w;
  w << "every conditional state of crossing pairs";
  for (auto [u, v] : crossing) w << " (" << u << "," << v << ")";
  w << " is separable for p >= threshold";
  // Which pair and environment syndrome stays entangled longest.
  double below = std::max(1e-9, p - 4 * tol);
  DiagonalState s = FromNoise(g, family(below));
  ConditionalMargin last;
  for (auto [u, v] : crossing) {
    auto m = CrossingPairMargin(s, u, v);
    if (m.margin > last.margin) last = m;
  }
  w << "; last entangled just below: pair (" << last.u << "," << last.v << ") env syndrome " << last.env;
  r.witness = w.str();
  return r;
}

// All bipartitions with one or more crossing edges and at most one crossing
// edge per vertex; returns the smallest threshold over them.
inline ThresholdResult BestLrPartitionThreshold(const Graph& g, const NoiseFamily& family, int threads = 1) {
  std::vector<Mask> cuts;
  Mask top = bit(g.n() - 1);
  for (Mask s = 1; s < top; ++s) {
    Bipartition b{s};
    if (!detail::AtMostOneCrossing(g, g.all(), s) || CrossingEdges(g, b).empty()) continue;
    cuts.push_back(s);
  }
  if (cuts.empty()) throw std::invalid_argument("graph has no LR cut with a crossing edge");
  std::vector<ThresholdResult> res(cuts.size());
  ParallelFor(cuts.size(), threads, [&](size_t i) { res[i] = PartitionThreshold(g, family, {cuts[i]}); });
  size_t best = 0;
  for (size_t i = 1; i < res.size(); ++i) {
    if (res[i].value < res[best].value) best = i;
  }
  res[best].witness = "partition mask " + std::to_string(cuts[best]) + ": " + res[best].witness;
  return res[best];
}

// u = 0 condition of the 3-chain, cleared of denominators: impossible when <= 0.
inline double Chain3DepolCubic(double p) { return 27 - 126 * p + 156 * p * p - 64 * p * p * p; }

struct ChainSweepRow {
  int n;
  double all_noisy;        // every qubit depolarized, best single-edge cut
  int all_noisy_cut;       // cut after this qubit
  double first_n1_noisy;   // last qubit noiseless, best single-edge cut
  int first_n1_noisy_cut;
};

inline ChainSweepRow DepolChainRow(int n) {
  if (n < 2) throw std::invalid_argument("chain sweep needs N >= 2");
  Graph g = MakeNamed("chain:" + std::to_string(n));
  ChainSweepRow row{n, 1, -1, 1, -1};
  NoiseFamily all = DepolFamily(), first = DepolOnFamily(bit(n - 1) - 1, n);
  for (int k = 0; k + 1 < n; ++k) {
    Bipartition cut{bit(k + 1) - 1};
    double a = PartitionThreshold(g, all, cut).value;
    double b = PartitionThreshold(g, first, cut).value;
    if (a < row.all_noisy) row.all_noisy = a, row.all_noisy_cut = k;
    if (b < row.first_n1_noisy) row.first_n1_noisy = b, row.first_n1_noisy_cut = k;
  }
  return row;
}

inline std::vector<ChainSweepRow> DepolChainSweep(int n_from, int n_to, int threads = 1) {
  if (n_from < 2 || n_to < n_from || n_to > 14) throw std::invalid_argument("chain sweep range must be within 2..14");
  std::vector<ChainSweepRow> rows(static_cast<size_t>(n_to - n_from + 1));
  ParallelFor(rows.size(), threads, [&](size_t i) { rows[i] = DepolChainRow(n_from + static_cast<int>(i)); });
  return rows;
}

}  // namespace gsp
