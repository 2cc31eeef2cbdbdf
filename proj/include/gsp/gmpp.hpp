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

// Multipartite purification of two-colorable graph states by the P1/P2
// sub-protocols. Weights are held as a matrix over (mu_A, mu_B).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "gsp/diag_state.hpp"
#include "gsp/graph_core.hpp"
#include "gsp/parallel.hpp"

namespace gsp {

class ColoredState {
 public:
  ColoredState() = default;

  // A-qubits are `a_mask`; mu_A packs them in increasing qubit order.
  ColoredState(const DiagonalState& s, Mask a_mask) {
    for (int q = 0; q < s.n(); ++q) ((a_mask >> q) & 1 ? a_ : b_).push_back(q);
    if (static_cast<int>(a_.size() + b_.size()) != s.n() || (a_mask >> s.n()) != 0) {
      throw std::invalid_argument("coloring mask has bits beyond the state");
    }
    m_.assign(s.size(), 0.0);
    for (size_t j = 0; j < s.size(); ++j) m_[Pack(j)] = s[j];
  }

  // Checks that every edge joins A and B.
  ColoredState(const Graph& g, const DiagonalState& s, Mask a_mask) : ColoredState(s, a_mask) {
    for (auto [u, v] : g.edges()) {
      if (((a_mask >> u) & 1) == ((a_mask >> v) & 1)) {
        throw std::invalid_argument("coloring is not proper: edge " + std::to_string(u) + "-" +
                                    std::to_string(v));
      }
    }
  }

  static ColoredState FromMatrix(int n_a, int n_b, std::vector<double> m) {
    ColoredState cs;
    for (int i = 0; i < n_a; ++i) cs.a_.push_back(i);
    for (int i = 0; i < n_b; ++i) cs.b_.push_back(n_a + i);
    if (m.size() != (size_t{1} << (n_a + n_b))) throw std::invalid_argument("matrix size mismatch");
    cs.m_ = std::move(m);
    return cs;
  }

  int n_a() const { return static_cast<int>(a_.size()); }
  int n_b() const { return static_cast<int>(b_.size()); }
  size_t rows() const { return size_t{1} << n_a(); }
  size_t cols() const { return size_t{1} << n_b(); }
  double at(size_t mu_a, size_t mu_b) const { return m_[mu_a * cols() + mu_b]; }
  const std::vector<double>& matrix() const { return m_; }
  std::vector<double>& matrix() { return m_; }
  const std::vector<int>& a_qubits() const { return a_; }
  const std::vector<int>& b_qubits() const { return b_; }

  double fidelity() const { return m_[0]; }
  double max_element() const { return *std::max_element(m_.begin(), m_.end()); }

  DiagonalState ToDiagonal() const {
    int n = n_a() + n_b();
    std::vector<double> l(m_.size());
    for (size_t j = 0; j < l.size(); ++j) l[j] = m_[Pack(j)];
    return DiagonalState(n, std::move(l));
  }

 private:
  size_t Pack(size_t j) const {
    size_t a = 0, b = 0;
    for (size_t k = 0; k < a_.size(); ++k) a |= ((j >> a_[k]) & 1) << k;
    for (size_t k = 0; k < b_.size(); ++k) b |= ((j >> b_[k]) & 1) << k;
    return a * cols() + b;
  }

  std::vector<int> a_, b_;
  std::vector<double> m_;
};

namespace detail {

inline void Wht(double* x, size_t len) {
  for (size_t h = 1; h < len; h *= 2) {
    for (size_t i = 0; i < len; i += 2 * h) {
      for (size_t k = i; k < i + h; ++k) {
        double a = x[k], b = x[k + h];
        x[k] = a + b;
        x[k + h] = a - b;
      }
    }
  }
}

// out[b] = sum_v in[v] in[b ^ v] over a strided line of length len.
inline void XorAutocorrelate(const double* in, size_t stride, size_t len, double* out) {
  if (len <= 64) {
    for (size_t b = 0; b < len; ++b) {
      double s = 0;
      for (size_t v = 0; v < len; ++v) s += in[v * stride] * in[(b ^ v) * stride];
      out[b] = s;
    }
    return;
  }
  std::vector<double> f(len);
  for (size_t v = 0; v < len; ++v) f[v] = in[v * stride];
  Wht(f.data(), len);
  for (double& x : f) x *= x;
  Wht(f.data(), len);
  for (size_t b = 0; b < len; ++b) out[b] = std::max(0.0, f[b] / static_cast<double>(len));
}

inline std::pair<ColoredState, double> Normalized(ColoredState cs, std::vector<double> out) {
  double total = 0;
  for (double x : out) total += x;
  if (!(total > 0)) throw std::domain_error("purification step left zero weight");
  for (double& x : out) x /= total;
  cs.matrix() = std::move(out);
  return {std::move(cs), total};
}

}  // namespace detail

// lambda'(a, b) = sum_v lambda(a, v) lambda(a, b ^ v), renormalized.
// Returns the pre-normalization total as the success probability.
inline std::pair<ColoredState, double> P1Step(const ColoredState& cs) {
  std::vector<double> out(cs.matrix().size());
  size_t c = cs.cols();
  for (size_t a = 0; a < cs.rows(); ++a) {
    detail::XorAutocorrelate(cs.matrix().data() + a * c, 1, c, out.data() + a * c);
  }
  return detail::Normalized(cs, std::move(out));
}

// lambda'(a, b) = sum_v lambda(v, b) lambda(a ^ v, b), renormalized.
inline std::pair<ColoredState, double> P2Step(const ColoredState& cs) {
  std::vector<double> out(cs.matrix().size());
  size_t c = cs.cols(), r = cs.rows();
  std::vector<double> col(r);
  for (size_t b = 0; b < c; ++b) {
    detail::XorAutocorrelate(cs.matrix().data() + b, c, r, col.data());
    for (size_t a = 0; a < r; ++a) out[a * c + b] = col[a];
  }
  return detail::Normalized(cs, std::move(out));
}

enum class Step : uint8_t { P1, P2 };

inline std::pair<ColoredState, double> ApplyStep(const ColoredState& cs, Step s) {
  return s == Step::P1 ? P1Step(cs) : P2Step(cs);
}

// Parses "P1P2P1...", "1212" or "P1,P2".
inline std::vector<Step> ParseSequence(const std::string& text) {
  std::vector<Step> out;
  for (size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (ch == 'P' || ch == 'p' || ch == ',' || ch == ' ') continue;
    if (ch == '1') out.push_back(Step::P1);
    else if (ch == '2') out.push_back(Step::P2);
    else throw std::invalid_argument("bad step '" + std::string(1, ch) + "' in sequence '" + text + "'");
  }
  if (out.empty()) throw std::invalid_argument("empty step sequence");
  return out;
}

inline std::string SequenceString(const std::vector<Step>& seq) {
  std::string s;
  for (Step x : seq) s += x == Step::P1 ? "P1" : "P2";
  return s;
}

struct TraceRecord {
  Step kind;
  double fidelity;
  double success_prob;
  double max_element;
};

struct GmppTrace {
  std::vector<TraceRecord> steps;
  ColoredState final_state;
};

inline GmppTrace RunSequence(const ColoredState& cs, const std::vector<Step>& steps) {
  if (steps.empty()) throw std::invalid_argument("run_sequence needs at least one step");
  GmppTrace t;
  t.final_state = cs;
  for (Step s : steps) {
    auto [next, p] = ApplyStep(t.final_state, s);
    t.final_state = std::move(next);
    t.steps.push_back({s, t.final_state.fidelity(), p, t.final_state.max_element()});
  }
  return t;
}

struct SearchBudget {
  int max_steps = 300;
  int random_restarts = 32;
  uint64_t seed = 20070412;
  int beam_width = 32;
  int threads = 1;
  double success_threshold = 1 - 1e-9;
  double attractor_tol = 1e-6;
};

struct StrategyResult {
  std::string id;
  double fidelity = 0;
  std::vector<Step> sequence;
  bool purified = false;
};

struct GmppVerdict {
  bool purifiable = false;
  double best_fidelity = 0;
  std::optional<int> attractor_k;  // limit matches 1/2^k
  std::string strategy;
  std::vector<Step> sequence;
  std::vector<StrategyResult> strategies;
};

namespace detail {

inline StrategyResult RunPolicy(const ColoredState& cs, const SearchBudget& b, std::string id,
                                const std::function<Step(const ColoredState&, int)>& policy) {
  StrategyResult r{std::move(id), cs.fidelity(), {}, false};
  ColoredState cur = cs;
  try {
    for (int i = 0; i < b.max_steps; ++i) {
      Step s = policy(cur, i);
      cur = ApplyStep(cur, s).first;
      r.sequence.push_back(s);
      if (cur.fidelity() > b.success_threshold) {
        r.purified = true;
        break;
      }
    }
  } catch (const std::domain_error&) {
    // Zero-weight branch: keep the last valid state.
  }
  r.fidelity = cur.fidelity();
  return r;
}

// Best-of-two by fidelity after a two-step lookahead.
inline Step GreedyLookahead(const ColoredState& cs) {
  double best = -1;
  Step pick = Step::P1;
  for (Step first : {Step::P1, Step::P2}) {
    auto one = ApplyStep(cs, first).first;
    for (Step second : {Step::P1, Step::P2}) {
      double f = ApplyStep(one, second).first.fidelity();
      if (f > best) {
        best = f;
        pick = first;
      }
    }
  }
  return pick;
}

struct VecHash {
  size_t operator()(const std::vector<double>& v) const {
    size_t h = v.size();
    for (double x : v) h = h * 0x9E3779B97F4A7C15ull + std::hash<long long>()(std::llround(x * 1e12));
    return h;
  }
};

// Keeps the `width` highest-fidelity distinct states after every step.
inline StrategyResult Beam(const ColoredState& cs, const SearchBudget& b) {
  struct Node {
    std::vector<Step> seq;
    ColoredState state;
  };
  std::vector<Node> pop{{{}, cs}};
  StrategyResult r{"beam:" + std::to_string(b.beam_width), cs.fidelity(), {}, false};
  for (int i = 0; i < b.max_steps; ++i) {
    std::vector<Node> next;
    std::unordered_set<std::vector<double>, VecHash> seen;
    for (const auto& node : pop) {
      for (Step s : {Step::P1, Step::P2}) {
        ColoredState st;
        try {
          st = ApplyStep(node.state, s).first;
        } catch (const std::domain_error&) {
          continue;
        }
        std::vector<double> key(st.matrix().size());
        for (size_t k = 0; k < key.size(); ++k) key[k] = std::round(st.matrix()[k] * 1e12) / 1e12;
        if (!seen.insert(std::move(key)).second) continue;
        auto seq = node.seq;
        seq.push_back(s);
        next.push_back({std::move(seq), std::move(st)});
      }
    }
    if (next.empty()) break;
    std::stable_sort(next.begin(), next.end(), [](const Node& x, const Node& y) {
      return x.state.fidelity() > y.state.fidelity();
    });
    if (next.size() > static_cast<size_t>(b.beam_width)) next.resize(static_cast<size_t>(b.beam_width));
    pop = std::move(next);
    if (pop[0].state.fidelity() > b.success_threshold) {
      r.purified = true;
      break;
    }
  }
  r.fidelity = pop[0].state.fidelity();
  r.sequence = pop[0].seq;
  return r;
}

}  // namespace detail

// Tries fixed alternations, greedy lookahead, seeded random sequences and a
// beam search. A negative verdict is not a proof of impossibility.
inline GmppVerdict SearchRegime(const ColoredState& cs, const SearchBudget& b = {}) {
  using Policy = std::function<Step(const ColoredState&, int)>;
  std::vector<std::pair<std::string, Policy>> policies;
  policies.emplace_back("alt:P1P2", [](const ColoredState&, int i) { return i % 2 ? Step::P2 : Step::P1; });
  policies.emplace_back("alt:P2P1", [](const ColoredState&, int i) { return i % 2 ? Step::P1 : Step::P2; });
  policies.emplace_back("greedy2", [](const ColoredState& s, int) { return detail::GreedyLookahead(s); });
  size_t fixed = policies.size();
  size_t total = fixed + static_cast<size_t>(b.random_restarts) + 1;

  std::vector<StrategyResult> results(total);
  ParallelFor(total, b.threads, [&](size_t i) {
    if (i < fixed) {
      results[i] = detail::RunPolicy(cs, b, policies[i].first, policies[i].second);
    } else if (i < total - 1) {
      size_t k = i - fixed;
      std::mt19937_64 rng(b.seed + k);
      char id[32];
      std::snprintf(id, sizeof id, "random:%03zu", k);
      results[i] = detail::RunPolicy(cs, b, id, [&rng](const ColoredState&, int) {
        return (rng() >> 63) ? Step::P2 : Step::P1;
      });
    } else {
      results[i] = detail::Beam(cs, b);
    }
  });

  GmppVerdict v;
  const StrategyResult* best = nullptr;
  for (const auto& r : results) {
    if (!best || r.fidelity > best->fidelity || (r.fidelity == best->fidelity && r.id < best->id)) best = &r;
  }
  v.best_fidelity = best->fidelity;
  v.strategy = best->id;
  v.sequence = best->sequence;
  v.purifiable = best->fidelity > b.success_threshold;
  if (!v.purifiable) {
    int n = cs.n_a() + cs.n_b();
    for (int k = 0; k <= n; ++k) {
      if (std::abs(v.best_fidelity - std::ldexp(1.0, -k)) < b.attractor_tol) v.attractor_k = k;
    }
  }
  v.strategies = std::move(results);
  return v;
}

}  // namespace gsp
