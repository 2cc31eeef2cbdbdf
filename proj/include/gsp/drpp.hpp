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

// Divide-and-rebuild purification: measure every qubit but one edge in Z,
// purify the noisy pairs, rebuild the graph.

#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gsp/diag_state.hpp"
#include "gsp/graph_core.hpp"
#include "gsp/numeric.hpp"
#include "gsp/parallel.hpp"

namespace gsp {

// Index = bit of the first qubit + 2 * bit of the second.
struct TwoQubitDiag {
  std::array<double, 4> l{1, 0, 0, 0};

  double max_element() const { return std::max(std::max(l[0], l[1]), std::max(l[2], l[3])); }
};

inline TwoQubitDiag ToPair(const DiagonalState& s) {
  if (s.n() != 2) throw std::invalid_argument("expected a two-qubit state");
  return {{s[0], s[1], s[2], s[3]}};
}

// Syndrome marginal on (u, v); u is the low bit.
inline TwoQubitDiag ReduceToEdge(const DiagonalState& s, int u, int v) {
  if (u == v) throw std::invalid_argument("reduce_to_edge: u == v");
  return ToPair(MarginalTo(s, {u, v}));
}

// A diagonal two-qubit state is entangled iff its largest entry exceeds 1/2.
inline bool PairPurifiable(const TwoQubitDiag& p) { return p.max_element() > 0.5; }

struct EdgeVerdict {
  int u, v;
  TwoQubitDiag pair;
  bool purifiable;
};

struct DrppVerdict {
  std::vector<EdgeVerdict> edges;
  bool purifiable = true;
  size_t worst = 0;  // index of the edge with the smallest largest-entry
};

inline DrppVerdict DrppVerdictFor(const Graph& g, const DiagonalState& s, int threads = 1) {
  if (!g.IsConnected()) throw std::invalid_argument("drpp needs a connected graph");
  if (s.n() != g.n()) throw std::invalid_argument("drpp: state and graph sizes differ");
  auto es = g.edges();
  if (es.empty()) throw std::invalid_argument("drpp needs at least one edge");
  DrppVerdict out;
  out.edges.resize(es.size());
  ParallelFor(es.size(), threads, [&](size_t i) {
    auto [u, v] = es[i];
    TwoQubitDiag p = ReduceToEdge(s, u, v);
    out.edges[i] = {u, v, p, PairPurifiable(p)};
  });
  for (size_t i = 0; i < es.size(); ++i) {
    out.purifiable = out.purifiable && out.edges[i].purifiable;
    if (out.edges[i].pair.max_element() < out.edges[out.worst].pair.max_element()) out.worst = i;
  }
  return out;
}

inline DrppVerdict DrppVerdictFor(const Graph& g, const NoiseSpec& spec, int threads = 1) {
  return DrppVerdictFor(g, FromNoise(g, spec), threads);
}

// R_2 >= R_psi >= R_2 / n_geo.
struct RateBound {
  long long n_geo = 1;
  double lower = 1;  // R_psi / R_2 lower bound
  double upper = 1;
};

inline RateBound MakeRateBound(long long n_geo) { return {n_geo, 1.0 / static_cast<double>(n_geo), 1.0}; }

// min(2(D_G-1)D_G + 1, C(N,2)).
inline RateBound NGeoBound(const Graph& g) {
  long long d = g.max_degree(), n = g.n();
  long long pairs = n * (n - 1) / 2;
  return MakeRateBound(std::max(1LL, std::min(2 * (d - 1) * d + 1, pairs)));
}

// d-dimensional cluster states: 3 d^2, independent of size.
inline RateBound NGeoCluster(int d) {
  if (d < 1) throw std::invalid_argument("cluster dimension must be >= 1");
  return MakeRateBound(3LL * d * d);
}

// Root of x^{2D} + 2x^{D+1} - 1 with x = 1 - 4p/3, returned as p.
inline double CriticalDepol(int degree) {
  if (degree < 1) throw std::invalid_argument("degree must be >= 1");
  double x = Bisect(
      [degree](double x) { return std::pow(x, 2 * degree) + 2 * std::pow(x, degree + 1) - 1 > 0; },
      0.0, 1.0);
  return 0.75 * (1 - x);
}

// Probability that the D_G - 1 neighbors of a pair qubit leave it error-free
// after measurement, by the explicit double sum.
inline double DrppQSum(int degree, double p) {
  int k = degree - 1;
  double q = 0;
  for (int n = 0; 2 * n <= k; ++n) {
    double inner = 0;
    int r = k - 2 * n;
    for (int m = 0; m <= r; ++m) {
      inner += Choose(r, m) *
               std::pow(1 - p, r - m) * std::pow(p / 3, m);
    }
    q += Choose(k, 2 * n) *
         std::pow(2 * p / 3, 2 * n) * inner;
  }
  return q;
}

inline double DrppQ(int degree, double p) { return 0.5 * (1 + std::pow(1 - 4 * p / 3, degree - 1)); }

// Probabilities of 0, 1, 2 local errors surviving on the pair.
inline std::array<double, 3> DrppG(double p) {
  double g0 = (1 - p) * (1 - p) + p * p / 3;
  double g2 = (1 - g0) / 3;
  return {g0, 2 * g2, g2};
}

// Error-free probability of the pair after the other qubits are measured.
inline double DrppPairFidelity(int degree, double p) {
  double q = DrppQ(degree, p);
  auto g = DrppG(p);
  return g[0] * q * q + g[1] * q * (1 - q) + g[2] * (1 - q) * (1 - q);
}

// Fidelity above which the DRPP purifies rho_N(x): 1/3 + 1/(3 * 2^{N-1}).
inline double MaxDepolDrppBound(int n) {
  if (n < 2) throw std::invalid_argument("N must be >= 2");
  return 1.0 / 3 + 1.0 / (3 * std::ldexp(1.0, n - 1));
}

// Fully connected graph with Y errors: fidelity 1/2((1-2p)^N + 1).
inline double FcYFidelity(int n, double p) { return 0.5 * (std::pow(1 - 2 * p, n) + 1); }

}  // namespace gsp
