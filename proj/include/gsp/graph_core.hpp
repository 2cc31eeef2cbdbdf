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

// Labeled simple graphs on at most 32 vertices, stored as adjacency bitsets.
// Also: LR partitions, local complementation, canonical labeling.

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace gsp {

using Mask = uint32_t;

inline constexpr int kMaxVertices = 32;

inline Mask bit(int v) { return Mask{1} << v; }
inline int popcount(Mask m) { return std::popcount(m); }

class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : n_(n), adj_(static_cast<size_t>(n), 0) {
    if (n < 1 || n > kMaxVertices) {
      throw std::invalid_argument("vertex count must be in 1..32, got " +
                                  std::to_string(n));
    }
  }

  static Graph FromEdges(int n, const std::vector<std::pair<int, int>>& edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.AddEdge(u, v);
    return g;
  }

  int n() const { return n_; }
  Mask adj(int v) const { return adj_[v]; }
  const std::vector<Mask>& adjacency() const { return adj_; }
  Mask all() const { return n_ == 32 ? ~Mask{0} : bit(n_) - 1; }

  bool HasEdge(int u, int v) const { return (adj_[u] >> v) & 1; }

  void AddEdge(int u, int v) {
    CheckVertex(u);
    CheckVertex(v);
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    adj_[u] |= bit(v);
    adj_[v] |= bit(u);
  }
  void RemoveEdge(int u, int v) {
    adj_[u] &= ~bit(v);
    adj_[v] &= ~bit(u);
  }
  void ToggleEdge(int u, int v) {
    adj_[u] ^= bit(v);
    adj_[v] ^= bit(u);
  }

  int degree(int v) const { return popcount(adj_[v]); }
  std::vector<int> degrees() const {
    std::vector<int> d(n_);
    for (int v = 0; v < n_; ++v) d[v] = degree(v);
    return d;
  }
  int max_degree() const {
    int d = 0;
    for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
    return d;
  }
  int min_degree() const {
    int d = n_;
    for (int v = 0; v < n_; ++v) d = std::min(d, degree(v));
    return d;
  }
  size_t edge_count() const {
    size_t c = 0;
    for (int v = 0; v < n_; ++v) c += degree(v);
    return c / 2;
  }
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_; ++u) {
      for (int v = u + 1; v < n_; ++v) {
        if (HasEdge(u, v)) out.emplace_back(u, v);
      }
    }
    return out;
  }

  // Vertex set of the connected component containing v.
  Mask Component(int v) const {
    Mask seen = bit(v), frontier = bit(v);
    while (frontier) {
      Mask next = 0;
      for (Mask f = frontier; f; f &= f - 1) next |= adj_[std::countr_zero(f)];
      frontier = next & ~seen;
      seen |= next;
    }
    return seen;
  }
  std::vector<Mask> Components() const {
    std::vector<Mask> out;
    Mask left = all();
    while (left) {
      Mask c = Component(std::countr_zero(left));
      out.push_back(c);
      left &= ~c;
    }
    return out;
  }
  bool IsConnected() const { return Component(0) == all(); }

  bool operator==(const Graph& o) const = default;

 private:
  void CheckVertex(int v) const {
    if (v < 0 || v >= n_) {
      throw std::out_of_range("vertex " + std::to_string(v) + " out of range for n=" +
                              std::to_string(n_));
    }
  }

  int n_ = 0;
  std::vector<Mask> adj_;
};

struct GraphHash {
  size_t operator()(const Graph& g) const {
    size_t h = static_cast<size_t>(g.n());
    for (Mask m : g.adjacency()) h = h * 0x9E3779B97F4A7C15ull + m;
    return h;
  }
};

// Party A of a bipartition; the complement is party B.
struct Bipartition {
  Mask mask = 0;
  bool operator==(const Bipartition&) const = default;
};

// Edges crossing the cut, each listed as (u, v) with u < v.
inline std::vector<std::pair<int, int>> CrossingEdges(const Graph& g, Bipartition p) {
  std::vector<std::pair<int, int>> out;
  for (auto [u, v] : g.edges()) {
    if (((p.mask >> u) & 1) != ((p.mask >> v) & 1)) out.emplace_back(u, v);
  }
  return out;
}

namespace detail {

// True iff no vertex of `within` has more than one neighbor on the other side.
inline bool AtMostOneCrossing(const Graph& g, Mask within, Mask side_a) {
  Mask side_b = within & ~side_a;
  for (Mask r = within; r; r &= r - 1) {
    int v = std::countr_zero(r);
    Mask other = (side_a >> v) & 1 ? side_b : side_a;
    Mask cross = g.adj(v) & other;
    if (cross & (cross - 1)) return false;
  }
  return true;
}

// First nontrivial LR cut of the vertex set `within`, or nullopt.
inline std::optional<Mask> LrCutOf(const Graph& g, Mask within) {
  if (popcount(within) < 2) return std::nullopt;
  Mask anchor = within & (~within + 1);  // lowest vertex stays in B
  Mask rest = within & ~anchor;
  for (Mask s = rest; s; s = (s - 1) & rest) {
    if (AtMostOneCrossing(g, within, s)) return s;
  }
  return std::nullopt;
}

}  // namespace detail

// Witness bipartition in which every vertex has at most one crossing edge.
// Disconnected graphs qualify trivially; see IsLrComponentwise for the census
// convention.
inline std::optional<Bipartition> IsLr(const Graph& g) {
  if (g.n() < 2) throw std::invalid_argument("IsLr needs n >= 2");
  // Scan masks in increasing order with the top vertex fixed in B.
  Mask top = bit(g.n() - 1);
  for (Mask s = 1; s < top; ++s) {
    if (detail::AtMostOneCrossing(g, g.all(), s)) return Bipartition{s};
  }
  return std::nullopt;
}

// Every connected component with two or more vertices has an LR cut of its own.
// The edgeless graph counts.
inline bool IsLrComponentwise(const Graph& g) {
  for (Mask c : g.Components()) {
    if (popcount(c) >= 2 && !detail::LrCutOf(g, c)) return false;
  }
  return true;
}

// Complements the edge set among the neighbors of v.
inline Graph LocalComplement(const Graph& g, int v) {
  if (v < 0 || v >= g.n()) throw std::out_of_range("local_complement: vertex out of range");
  Graph out = g;
  Mask nb = g.adj(v);
  for (Mask r = nb; r; r &= r - 1) {
    int u = std::countr_zero(r);
    for (Mask s = nb & ~((bit(u) << 1) - 1); s; s &= s - 1) out.ToggleEdge(u, std::countr_zero(s));
  }
  return out;
}

// Removes v, keeping the relative order of the remaining vertices.
inline Graph ZDelete(const Graph& g, int v) {
  if (v < 0 || v >= g.n()) throw std::out_of_range("z_delete: vertex out of range");
  if (g.n() == 1) throw std::invalid_argument("z_delete: cannot delete the only vertex");
  Graph out(g.n() - 1);
  auto re = [v](int u) { return u < v ? u : u - 1; };
  for (auto [a, b] : g.edges()) {
    if (a != v && b != v) out.AddEdge(re(a), re(b));
  }
  return out;
}

// BFS 2-coloring with vertex 0 (and each component's lowest vertex) in A.
inline std::optional<std::pair<Mask, Mask>> TwoColoring(const Graph& g) {
  std::vector<int> color(g.n(), -1);
  Mask a = 0;
  for (int s = 0; s < g.n(); ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    std::deque<int> q{s};
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      if (color[u] == 0) a |= bit(u);
      for (Mask r = g.adj(u); r; r &= r - 1) {
        int w = std::countr_zero(r);
        if (color[w] < 0) {
          color[w] = 1 - color[u];
          q.push_back(w);
        } else if (color[w] == color[u]) {
          return std::nullopt;
        }
      }
    }
  }
  return std::make_pair(a, g.all() & ~a);
}

// Relabels: vertex v becomes perm[v].
inline Graph Permute(const Graph& g, const std::vector<int>& perm) {
  Graph out(g.n());
  for (auto [u, v] : g.edges()) out.AddEdge(perm[u], perm[v]);
  return out;
}

struct CanonicalForm {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // sorted
  auto operator<=>(const CanonicalForm&) const = default;

  Graph ToGraph() const { return Graph::FromEdges(n, edges); }
};

struct CanonicalFormHash {
  size_t operator()(const CanonicalForm& c) const {
    size_t h = static_cast<size_t>(c.n);
    for (auto [u, v] : c.edges) h = h * 0x100000001B3ull + static_cast<size_t>(u * 64 + v + 1);
    return h;
  }
};

namespace detail {

using Cells = std::vector<std::vector<int>>;

// Splits cells by neighbor counts into every cell until stable. Sub-cells are
// ordered by signature, so the result depends only on the labeled structure
// up to relabeling.
inline void Refine(const Graph& g, Cells& cells) {
  std::vector<int> cell_of(g.n());
  for (;;) {
    for (size_t c = 0; c < cells.size(); ++c) {
      for (int v : cells[c]) cell_of[v] = static_cast<int>(c);
    }
    Cells next;
    next.reserve(static_cast<size_t>(g.n()));
    for (const auto& cell : cells) {
      if (cell.size() == 1) {
        next.push_back(cell);
        continue;
      }
      std::vector<std::pair<std::vector<int>, int>> sig;
      sig.reserve(cell.size());
      for (int v : cell) {
        std::vector<int> s(cells.size(), 0);
        for (Mask r = g.adj(v); r; r &= r - 1) ++s[cell_of[std::countr_zero(r)]];
        sig.emplace_back(std::move(s), v);
      }
      std::stable_sort(sig.begin(), sig.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      next.push_back({sig[0].second});
      for (size_t i = 1; i < sig.size(); ++i) {
        if (sig[i].first != sig[i - 1].first) next.emplace_back();
        next.back().push_back(sig[i].second);
      }
    }
    if (next.size() == cells.size()) return;
    cells = std::move(next);
  }
}

struct CanonSearch {
  const Graph& g;
  std::vector<Mask> best;
  bool have = false;

  void Leaf(const Cells& cells) {
    std::vector<int> label(g.n());
    for (size_t i = 0; i < cells.size(); ++i) label[cells[i][0]] = static_cast<int>(i);
    std::vector<Mask> rows(g.n(), 0);
    for (int v = 0; v < g.n(); ++v) {
      Mask m = 0;
      for (Mask r = g.adj(v); r; r &= r - 1) m |= bit(label[std::countr_zero(r)]);
      rows[label[v]] = m;
    }
    if (!have || rows < best) {
      best = std::move(rows);
      have = true;
    }
  }

  void Run(Cells cells) {
    Refine(g, cells);
    if (static_cast<int>(cells.size()) == g.n()) {
      Leaf(cells);
      return;
    }
    size_t t = cells.size();
    for (size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].size() > 1 && (t == cells.size() || cells[i].size() < cells[t].size())) t = i;
    }
    std::vector<int> tried;
    for (int v : cells[t]) {
      // Swapping two twins in the same cell is an automorphism that fixes the
      // partition, so only one of them needs a branch.
      bool twin = std::any_of(tried.begin(), tried.end(), [&](int u) {
        return ((g.adj(u) ^ g.adj(v)) & ~(bit(u) | bit(v))) == 0;
      });
      if (twin) continue;
      tried.push_back(v);
      Cells next;
      next.reserve(cells.size() + 1);
      for (size_t i = 0; i < cells.size(); ++i) {
        if (i != t) {
          next.push_back(cells[i]);
          continue;
        }
        next.push_back({v});
        std::vector<int> rest;
        for (int u : cells[i]) {
          if (u != v) rest.push_back(u);
        }
        next.push_back(std::move(rest));
      }
      Run(std::move(next));
    }
  }
};

}  // namespace detail

// Individualization-refinement canonical labeling: the minimal relabeled
// adjacency over all search leaves.
inline CanonicalForm Canonical(const Graph& g) {
  if (g.n() > 16) throw std::invalid_argument("canonical: n must be <= 16");
  detail::CanonSearch search{g, {}, false};
  detail::Cells start(1);
  for (int v = 0; v < g.n(); ++v) start[0].push_back(v);
  search.Run(std::move(start));
  CanonicalForm cf;
  cf.n = g.n();
  for (int u = 0; u < g.n(); ++u) {
    for (Mask r = search.best[u] & ~((bit(u) << 1) - 1); r; r &= r - 1) {
      cf.edges.emplace_back(u, std::countr_zero(r));
    }
  }
  return cf;
}

struct LcOrbit {
  size_t labeled_count = 0;
  std::set<CanonicalForm> classes;
  bool any_lr = false;
};

// Breadth-first closure under local complementation at every vertex.
inline LcOrbit LcOrbitOf(const Graph& g, bool up_to_iso = true, size_t cap = 1'000'000) {
  if (g.n() > 16) throw std::invalid_argument("lc_orbit: n must be <= 16");
  LcOrbit out;
  std::unordered_set<Graph, GraphHash> seen{g};
  std::deque<Graph> q{g};
  while (!q.empty()) {
    Graph h = std::move(q.front());
    q.pop_front();
    if (h.n() >= 2 && IsLr(h)) out.any_lr = true;
    if (up_to_iso) out.classes.insert(Canonical(h));
    for (int v = 0; v < h.n(); ++v) {
      Graph k = LocalComplement(h, v);
      if (seen.insert(k).second) {
        if (seen.size() > cap) {
          throw std::length_error("lc_orbit: orbit exceeds cap of " + std::to_string(cap));
        }
        q.push_back(std::move(k));
      }
    }
  }
  out.labeled_count = seen.size();
  return out;
}

// True iff some graph LC-equivalent to g has an LR cut. Stops at the first hit.
inline bool LcOrbitHasLr(const Graph& g) {
  if (g.n() < 2) return true;
  std::unordered_set<Graph, GraphHash> seen{g};
  std::deque<Graph> q{g};
  while (!q.empty()) {
    Graph h = std::move(q.front());
    q.pop_front();
    if (IsLr(h)) return true;
    for (int v = 0; v < h.n(); ++v) {
      Graph k = LocalComplement(h, v);
      if (seen.insert(k).second) q.push_back(std::move(k));
    }
  }
  return false;
}

namespace detail {

inline int ParseCount(const std::string& s, const std::string& spec) {
  size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad integer '" + s + "' in graph spec '" + spec + "'");
  }
  if (pos != s.size()) {
    throw std::invalid_argument("bad integer '" + s + "' in graph spec '" + spec + "'");
  }
  if (v < 1 || v > kMaxVertices) {
    throw std::invalid_argument("vertex count out of range 1..32 in '" + spec + "'");
  }
  return v;
}

inline Graph Icosahedron() {
  // 0 top, 1..5 upper ring, 6..10 lower ring, 11 bottom.
  Graph g(12);
  for (int i = 0; i < 5; ++i) {
    int up = 1 + i, up_next = 1 + (i + 1) % 5;
    int lo = 6 + i, lo_next = 6 + (i + 1) % 5;
    g.AddEdge(0, up);
    g.AddEdge(up, up_next);
    g.AddEdge(up, lo);
    g.AddEdge(up, lo_next);
    g.AddEdge(lo, lo_next);
    g.AddEdge(lo, 11);
  }
  return g;
}

}  // namespace detail

// Graph file: first non-comment line is N, then one "u v" pair per line.
// '#' starts a comment. Duplicate edges are rejected.
inline Graph ReadGraphFile(std::istream& in, const std::string& name = "<stream>") {
  std::string line;
  int lineno = 0;
  std::optional<Graph> g;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument(name + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    auto to_int = [&](const std::string& t) {
      size_t pos = 0;
      int v = 0;
      try {
        v = std::stoi(t, &pos);
      } catch (const std::exception&) {
        fail("expected integer, got '" + t + "'");
      }
      if (pos != t.size()) fail("expected integer, got '" + t + "'");
      return v;
    };
    if (!g) {
      if (tok.size() != 1) fail("first line must hold the vertex count");
      int n = to_int(tok[0]);
      if (n < 1 || n > kMaxVertices) fail("vertex count out of range 1..32");
      g.emplace(n);
      continue;
    }
    if (tok.size() != 2) fail("expected 'u v'");
    int u = to_int(tok[0]), v = to_int(tok[1]);
    if (u < 0 || v < 0 || u >= g->n() || v >= g->n()) fail("vertex out of range");
    if (u == v) fail("self-loop");
    if (g->HasEdge(u, v)) fail("duplicate edge " + tok[0] + " " + tok[1]);
    g->AddEdge(u, v);
  }
  if (!g) throw std::invalid_argument(name + ": empty graph file");
  return *g;
}

// chain:N, cycle:N, star:N, complete:N, grid:AxB, pentagon, icosahedron, file:PATH.
inline Graph MakeNamed(const std::string& spec) {
  auto colon = spec.find(':');
  std::string name = spec.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto need_arg = [&] {
    if (arg.empty()) throw std::invalid_argument("graph spec '" + spec + "' needs a parameter");
  };
  if (name == "chain" || name == "cycle" || name == "star" || name == "complete") {
    need_arg();
    int n = detail::ParseCount(arg, spec);
    Graph g(n);
    if (name == "chain") {
      for (int i = 0; i + 1 < n; ++i) g.AddEdge(i, i + 1);
    } else if (name == "cycle") {
      if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
      for (int i = 0; i < n; ++i) g.AddEdge(i, (i + 1) % n);
    } else if (name == "star") {
      for (int i = 1; i < n; ++i) g.AddEdge(0, i);
    } else {
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) g.AddEdge(i, j);
      }
    }
    return g;
  }
  if (name == "grid") {
    need_arg();
    auto x = arg.find('x');
    if (x == std::string::npos) throw std::invalid_argument("grid spec must be grid:AxB");
    int a = detail::ParseCount(arg.substr(0, x), spec);
    int b = detail::ParseCount(arg.substr(x + 1), spec);
    if (a * b > kMaxVertices) throw std::invalid_argument("grid too large: " + spec);
    Graph g(a * b);
    for (int r = 0; r < a; ++r) {
      for (int c = 0; c < b; ++c) {
        int v = r * b + c;
        if (c + 1 < b) g.AddEdge(v, v + 1);
        if (r + 1 < a) g.AddEdge(v, v + b);
      }
    }
    return g;
  }
  if (name == "pentagon" && arg.empty()) return MakeNamed("cycle:5");
  if (name == "icosahedron" && arg.empty()) return detail::Icosahedron();
  if (name == "file") {
    need_arg();
    std::ifstream in(arg);
    if (!in) throw std::invalid_argument("cannot open graph file '" + arg + "'");
    return ReadGraphFile(in, arg);
  }
  throw std::invalid_argument("unknown graph spec '" + spec + "'");
}

}  // namespace gsp
