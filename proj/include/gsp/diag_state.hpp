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

// States diagonal in the graph-state basis. Entry j is the weight of the
// graph state with Z applied on the qubits set in j; qubit 0 is the least
// significant bit.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gsp/graph_core.hpp"
#include "json.hpp"

namespace gsp {

inline constexpr int kMaxStateQubits = 24;
inline constexpr const char* kBitConvention = "syndrome bit i = qubit i, qubit 0 least significant";

class DiagonalState {
 public:
  DiagonalState() = default;

  // Renormalizes. Throws if an entry is negative or the total is zero.
  DiagonalState(int n, std::vector<double> lambda) : n_(n), lambda_(std::move(lambda)) {
    if (n < 1 || n > kMaxStateQubits) throw std::invalid_argument("state qubit count out of range");
    if (lambda_.size() != (size_t{1} << n)) throw std::invalid_argument("lambda length must be 2^n");
    double total = 0;
    for (double& x : lambda_) {
      if (x < 0) {
        if (x < -1e-12) throw std::invalid_argument("negative weight in diagonal state");
        x = 0;
      }
      total += x;
    }
    if (!(total > 0)) throw std::domain_error("diagonal state has zero total weight");
    for (double& x : lambda_) x /= total;
  }

  static DiagonalState Pure(int n) {
    std::vector<double> l(size_t{1} << n, 0.0);
    l[0] = 1;
    return DiagonalState(n, std::move(l));
  }

  int n() const { return n_; }
  size_t size() const { return lambda_.size(); }
  double operator[](size_t j) const { return lambda_[j]; }
  const std::vector<double>& lambda() const { return lambda_; }

  double fidelity() const { return lambda_[0]; }
  double max_element() const { return *std::max_element(lambda_.begin(), lambda_.end()); }

 private:
  int n_ = 0;
  std::vector<double> lambda_;
};

enum class Pauli : uint8_t { I, X, Y, Z };

using PauliPattern = std::vector<Pauli>;

// Z-syndrome equivalent to the pattern acting on the graph state: X_i acts as
// Z on N(i), Y_i as Z on {i} and N(i), Z_i as Z on i.
inline Mask PauliToSyndrome(const Graph& g, const PauliPattern& pat) {
  if (static_cast<int>(pat.size()) != g.n()) {
    throw std::invalid_argument("pauli pattern length must equal vertex count");
  }
  Mask s = 0;
  for (int i = 0; i < g.n(); ++i) {
    switch (pat[i]) {
      case Pauli::I: break;
      case Pauli::X: s ^= g.adj(i); break;
      case Pauli::Y: s ^= g.adj(i) ^ bit(i); break;
      case Pauli::Z: s ^= bit(i); break;
    }
  }
  return s;
}

struct PauliRates {
  double px = 0, py = 0, pz = 0;
  bool operator==(const PauliRates&) const = default;
};

namespace noise {
struct Z {
  double p;
};
struct LocalPauli {
  PauliRates rates;
};
struct Depol {
  double p;
};
struct Global {
  double x;
};
struct Thermal {
  double beta, delta;
};
// Explicit per-qubit rates; qubits beyond the list are noiseless.
struct Pattern {
  std::vector<PauliRates> per_qubit;
};
}  // namespace noise

using NoiseSpec = std::variant<noise::Z, noise::LocalPauli, noise::Depol, noise::Global,
                               noise::Thermal, noise::Pattern>;

inline double ThermalFlipProbability(double beta, double delta) {
  return 1.0 / (1.0 + std::exp(beta * delta));
}

namespace detail {

inline void CheckProb(double p, const char* what) {
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument(std::string(what) + " must be in [0,1]");
}

inline void CheckRates(const PauliRates& r) {
  CheckProb(r.px, "p_x");
  CheckProb(r.py, "p_y");
  CheckProb(r.pz, "p_z");
  if (r.px + r.py + r.pz > 1 + 1e-15) throw std::invalid_argument("p_x+p_y+p_z must be <= 1");
}

// Convolves one qubit's Pauli channel into lambda, in place.
inline void ConvolveQubit(std::vector<double>& lambda, const Graph& g, int q, const PauliRates& r) {
  if (r.px == 0 && r.py == 0 && r.pz == 0) return;
  Mask sx = g.adj(q), sy = g.adj(q) ^ bit(q), sz = bit(q);
  double pi = 1 - r.px - r.py - r.pz;
  std::vector<double> out(lambda.size());
  for (size_t j = 0; j < lambda.size(); ++j) {
    out[j] = pi * lambda[j] + r.px * lambda[j ^ sx] + r.py * lambda[j ^ sy] + r.pz * lambda[j ^ sz];
  }
  lambda.swap(out);
}

inline std::vector<PauliRates> PerQubitRates(const Graph& g, const NoiseSpec& spec) {
  std::vector<PauliRates> r(g.n());
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, noise::LocalPauli>) {
          CheckRates(s.rates);
          std::fill(r.begin(), r.end(), s.rates);
        } else if constexpr (std::is_same_v<T, noise::Depol>) {
          CheckProb(s.p, "depolarizing p");
          std::fill(r.begin(), r.end(), PauliRates{s.p / 3, s.p / 3, s.p / 3});
        } else if constexpr (std::is_same_v<T, noise::Pattern>) {
          if (static_cast<int>(s.per_qubit.size()) > g.n()) {
            throw std::invalid_argument("noise pattern longer than the graph");
          }
          for (size_t i = 0; i < s.per_qubit.size(); ++i) {
            CheckRates(s.per_qubit[i]);
            r[i] = s.per_qubit[i];
          }
        }
      },
      spec);
  return r;
}

}  // namespace detail

inline DiagonalState ProductZ(int n, double p) {
  detail::CheckProb(p, "Z error probability");
  std::vector<double> l(size_t{1} << n);
  for (size_t j = 0; j < l.size(); ++j) {
    int w = popcount(static_cast<Mask>(j));
    l[j] = std::pow(p, w) * std::pow(1 - p, n - w);
  }
  return DiagonalState(n, std::move(l));
}

inline DiagonalState GlobalDepolarized(int n, double x) {
  if (!(x >= 0)) throw std::invalid_argument("global noise parameter x must be >= 0");
  std::vector<double> l(size_t{1} << n, 1.0);
  l[0] += x;
  return DiagonalState(n, std::move(l));
}

inline DiagonalState FromNoise(const Graph& g, const NoiseSpec& spec) {
  if (g.n() > kMaxStateQubits) throw std::invalid_argument("graph too large for a dense state");
  if (auto* z = std::get_if<noise::Z>(&spec)) return ProductZ(g.n(), z->p);
  if (auto* t = std::get_if<noise::Thermal>(&spec)) {
    if (!(t->delta > 0) || !(t->beta >= 0)) throw std::invalid_argument("thermal noise needs delta > 0, beta >= 0");
    return ProductZ(g.n(), ThermalFlipProbability(t->beta, t->delta));
  }
  if (auto* x = std::get_if<noise::Global>(&spec)) return GlobalDepolarized(g.n(), x->x);
  auto rates = detail::PerQubitRates(g, spec);
  std::vector<double> l(size_t{1} << g.n(), 0.0);
  l[0] = 1;
  for (int q = 0; q < g.n(); ++q) detail::ConvolveQubit(l, g, q, rates[q]);
  return DiagonalState(g.n(), std::move(l));
}

// XOR convolution of two independent layers on the same qubits.
inline DiagonalState Convolve(const DiagonalState& a, const DiagonalState& b) {
  if (a.n() != b.n()) throw std::invalid_argument("convolve: qubit counts differ");
  std::vector<double> out(a.size(), 0.0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) out[i ^ j] += a[i] * b[j];
  }
  return DiagonalState(a.n(), std::move(out));
}

// Sums out the syndrome bit of `qubit`; higher qubits shift down by one.
inline DiagonalState Marginalize(const DiagonalState& s, int qubit) {
  if (s.n() < 2) throw std::invalid_argument("marginalize needs n >= 2");
  if (qubit < 0 || qubit >= s.n()) throw std::out_of_range("marginalize: qubit out of range");
  size_t low = (size_t{1} << qubit) - 1;
  std::vector<double> out(s.size() / 2);
  for (size_t u = 0; u < out.size(); ++u) {
    size_t base = (u & low) | ((u & ~low) << 1);
    out[u] = s[base] + s[base | (size_t{1} << qubit)];
  }
  return DiagonalState(s.n() - 1, std::move(out));
}

// Keeps the listed qubits, in the given order (first listed is bit 0).
inline DiagonalState MarginalTo(const DiagonalState& s, const std::vector<int>& keep) {
  for (int q : keep) {
    if (q < 0 || q >= s.n()) throw std::out_of_range("marginal: qubit out of range");
  }
  int k = static_cast<int>(keep.size());
  std::vector<double> out(size_t{1} << k, 0.0);
  for (size_t j = 0; j < s.size(); ++j) {
    size_t u = 0;
    for (int i = 0; i < k; ++i) u |= ((j >> keep[i]) & 1) << i;
    out[u] += s[j];
  }
  return DiagonalState(k, std::move(out));
}

// XOR-relabels so the largest entry sits at index 0. Ties go to the smallest index.
inline std::pair<DiagonalState, Mask> PromoteMax(const DiagonalState& s) {
  size_t arg = static_cast<size_t>(
      std::max_element(s.lambda().begin(), s.lambda().end()) - s.lambda().begin());
  std::vector<double> out(s.size());
  for (size_t j = 0; j < s.size(); ++j) out[j] = s[j ^ arg];
  return {DiagonalState(s.n(), std::move(out)), static_cast<Mask>(arg)};
}

inline double Fidelity(const DiagonalState& s) { return s.fidelity(); }

inline nlohmann::json ToJson(const DiagonalState& s) {
  return {{"n", s.n()}, {"convention", kBitConvention}, {"lambda", s.lambda()}};
}

inline DiagonalState DiagonalStateFromJson(const nlohmann::json& j) {
  return DiagonalState(j.at("n").get<int>(), j.at("lambda").get<std::vector<double>>());
}

inline std::string Bits(size_t j, int n) {
  std::string b(static_cast<size_t>(n), '0');
  for (int i = 0; i < n; ++i) {
    if ((j >> i) & 1) b[static_cast<size_t>(n - 1 - i)] = '1';
  }
  return b;
}

// Header: syndrome,bits,weight. `bits` prints qubit n-1 first.
inline void WriteCsv(std::ostream& out, const DiagonalState& s) {
  out << "syndrome,bits,weight\n";
  char buf[64];
  for (size_t j = 0; j < s.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g", s[j]);
    out << j << ',' << Bits(j, s.n()) << ',' << buf << '\n';
  }
}

}  // namespace gsp
