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

// Counting LR graphs: exhaustive labeled census, the analytic estimates, and
// LC-orbit coverage over isomorphism classes.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gsp/graph_core.hpp"
#include "gsp/numeric.hpp"
#include "gsp/parallel.hpp"

namespace gsp {

// Labeled graph number `code` on n vertices: bit k of code is the k-th pair
// (i, j), i < j, in lexicographic order.
inline Graph GraphFromCode(int n, uint64_t code) {
  Graph g(n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++k) {
      if ((code >> k) & 1) g.AddEdge(i, j);
    }
  }
  return g;
}

// Probability that a fixed q-vs-(N-q) cut of a uniformly random graph has at
// most one crossing bond per vertex. With count_empty_cut = false the b = 0
// term (no crossing bond at all) is dropped.
inline double PQ(int n, int q, bool count_empty_cut = true) {
  if (q < 1 || 2 * q > n) throw std::invalid_argument("p_q needs 1 <= q <= N/2");
  double s = 0;
  for (int b = count_empty_cut ? 0 : 1; b <= q; ++b) {
    s += Choose(q, b) * Choose(n - q, b) * std::tgamma(b + 1);
  }
  return s / std::ldexp(1.0, q * (n - q));
}

// Some q-subset works: 1 - (1 - p_q)^{C(N,q)}.
inline double BigPQ(int n, int q, bool count_empty_cut = true) {
  return 1 - std::pow(1 - PQ(n, q, count_empty_cut), Choose(n, q));
}

// Treats every q as having the smallest (largest) P_q: 1 - (1 - P)^{floor(N/2)}.
inline std::pair<double, double> PEstimate(int n, bool count_empty_cut = true) {
  if (n < 2) throw std::invalid_argument("P estimate needs N >= 2");
  double lo = 1, hi = 0;
  for (int q = 1; 2 * q <= n; ++q) {
    double p = BigPQ(n, q, count_empty_cut);
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  int terms = n / 2;
  return {1 - std::pow(1 - lo, terms), 1 - std::pow(1 - hi, terms)};
}

// (N-1)/2^{N-1} <= |LR_N| / |G_N| <= N^3 / 2^N.
inline std::pair<double, double> RatioBounds(int n) {
  return {(n - 1) / std::ldexp(1.0, n - 1), std::pow(n, 3) / std::ldexp(1.0, n)};
}

struct CensusReport {
  int n = 0;
  uint64_t lr_count = 0;
  uint64_t total = 0;
  std::vector<double> p_q;       // q = 1..N/2
  std::pair<double, double> p_estimate;
  std::pair<double, double> ratio_bounds;
  double wall_seconds = 0;
};

// Exhaustive labeled census. A graph counts when every component with two or
// more vertices has its own LR cut; the edgeless graph counts.
inline CensusReport CountLr(int n, int threads = DefaultThreads(), int shards = 256) {
  if (n < 2 || n > 8) throw std::invalid_argument("count_lr supports 2 <= N <= 8");
  auto t0 = std::chrono::steady_clock::now();
  uint64_t total = uint64_t{1} << (n * (n - 1) / 2);
  size_t n_shards = static_cast<size_t>(std::max<uint64_t>(1, std::min<uint64_t>(shards, total)));
  std::vector<uint64_t> counts(n_shards, 0);
  ParallelFor(n_shards, threads, [&](size_t s) {
    uint64_t lo = total * s / n_shards, hi = total * (s + 1) / n_shards;
    uint64_t c = 0;
    for (uint64_t code = lo; code < hi; ++code) c += IsLrComponentwise(GraphFromCode(n, code));
    counts[s] = c;
  });
  CensusReport r;
  r.n = n;
  r.total = total;
  for (uint64_t c : counts) r.lr_count += c;
  for (int q = 1; 2 * q <= n; ++q) r.p_q.push_back(PQ(n, q));
  r.p_estimate = PEstimate(n);
  r.ratio_bounds = RatioBounds(n);
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// Isomorphism classes of all graphs with exactly n vertices, built by adding a
// vertex to every class on n - 1 vertices in every possible way.
inline std::vector<std::set<CanonicalForm>> IsoClassesUpTo(int max_n) {
  if (max_n < 1 || max_n > 9) throw std::invalid_argument("iso class generation supports 1..9 vertices");
  std::vector<std::set<CanonicalForm>> out(static_cast<size_t>(max_n + 1));
  out[1].insert(Canonical(Graph(1)));
  for (int n = 2; n <= max_n; ++n) {
    for (const auto& cf : out[n - 1]) {
      Graph base = cf.ToGraph();
      for (Mask s = 0; s < bit(n - 1); ++s) {
        Graph g(n);
        for (auto [u, v] : base.edges()) g.AddEdge(u, v);
        for (Mask r = s; r; r &= r - 1) g.AddEdge(n - 1, std::countr_zero(r));
        out[n].insert(Canonical(g));
      }
    }
  }
  return out;
}

struct CoverageReport {
  int max_n = 0;
  size_t connected_classes = 0;
  std::vector<size_t> per_n;               // connected classes with exactly n vertices
  std::vector<CanonicalForm> violators;    // no LR graph in the LC orbit
};

// Checks that every connected graph on <= max_n vertices is LC-equivalent to
// an LR graph. The single vertex counts as covered.
inline CoverageReport LcLrCoverage(int max_n, int threads = DefaultThreads()) {
  auto classes = IsoClassesUpTo(max_n);
  CoverageReport r;
  r.max_n = max_n;
  r.per_n.assign(static_cast<size_t>(max_n + 1), 0);
  std::vector<CanonicalForm> todo;
  for (int n = 1; n <= max_n; ++n) {
    for (const auto& cf : classes[n]) {
      if (!cf.ToGraph().IsConnected()) continue;
      ++r.per_n[n];
      todo.push_back(cf);
    }
  }
  r.connected_classes = todo.size();
  std::vector<char> ok(todo.size(), 0);
  ParallelFor(todo.size(), threads, [&](size_t i) { ok[i] = LcOrbitHasLr(todo[i].ToGraph()); });
  for (size_t i = 0; i < todo.size(); ++i) {
    if (!ok[i]) r.violators.push_back(todo[i]);
  }
  return r;
}

// Connected, maximum degree <= 3, no LR cut; 2 <= n <= max_n.
inline std::vector<CanonicalForm> Degree3NonLrCatalog(int max_n) {
  auto classes = IsoClassesUpTo(max_n);
  std::vector<CanonicalForm> out;
  for (int n = 2; n <= max_n; ++n) {
    for (const auto& cf : classes[n]) {
      Graph g = cf.ToGraph();
      if (g.max_degree() <= 3 && g.IsConnected() && !IsLr(g)) out.push_back(cf);
    }
  }
  return out;
}

}  // namespace gsp
