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

// Iterated bipartite purification over Z_D errors, in closed form via a
// discrete Fourier transform down each column.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gsp {

// lambda(k, j): error k on one side, j on the other. Row-major.
class BipartiteDiag {
 public:
  BipartiteDiag(int d, std::vector<double> lambda) : d_(d), l_(std::move(lambda)) {
    if (d < 2 || (d & (d - 1)) != 0) throw std::invalid_argument("D must be a power of two >= 2");
    if (l_.size() != static_cast<size_t>(d) * d) throw std::invalid_argument("lambda must be D x D");
    double total = 0;
    for (double& x : l_) {
      if (x < 0) {
        if (x < -1e-12) throw std::invalid_argument("negative weight");
        x = 0;
      }
      total += x;
    }
    if (!(total > 0)) throw std::domain_error("zero total weight");
    for (double& x : l_) x /= total;
  }

  // D = 2^{N/2} for N/2 qubits on each side.
  static BipartiteDiag ForQubits(int n, std::vector<double> lambda) {
    if (n < 2 || n % 2) throw std::invalid_argument("N must be even and >= 2");
    return BipartiteDiag(1 << (n / 2), std::move(lambda));
  }

  int d() const { return d_; }
  double at(int k, int j) const { return l_[static_cast<size_t>(k) * d_ + j]; }
  const std::vector<double>& lambda() const { return l_; }

 private:
  int d_;
  std::vector<double> l_;
};

// (1 + x delta_k delta_j) / (D^2 + x).
inline BipartiteDiag GlobalStyle(int d, double x) {
  if (!(x >= 0)) throw std::invalid_argument("x must be >= 0");
  std::vector<double> l(static_cast<size_t>(d) * d, 1.0);
  l[0] += x;
  return BipartiteDiag(d, std::move(l));
}

namespace detail {

// sum_k' e^{-2 pi i k k' / D} v[k'].
inline std::vector<std::complex<double>> Dft(const std::vector<std::complex<double>>& v) {
  size_t d = v.size();
  std::vector<std::complex<double>> out(d);
  for (size_t k = 0; k < d; ++k) {
    std::complex<double> s = 0;
    for (size_t kp = 0; kp < d; ++kp) {
      s += std::polar(1.0, -2 * std::numbers::pi * static_cast<double>((k * kp) % d) / static_cast<double>(d)) * v[kp];
    }
    out[k] = s;
  }
  return out;
}

}  // namespace detail

// lambda^{(n)}_{kj} = sum_k' w^{-kk'} [sum_k'' w^{-k''k'} lambda_{k''j}]^{2^n},
// renormalized. Powers are taken by n squarings with a common rescale.
inline BipartiteDiag IterateMap(const BipartiteDiag& m, int rounds) {
  if (rounds < 0) throw std::invalid_argument("rounds must be >= 0");
  if (rounds == 0) return m;
  int d = m.d();
  std::vector<std::vector<std::complex<double>>> f(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) {
    std::vector<std::complex<double>> col(static_cast<size_t>(d));
    for (int k = 0; k < d; ++k) col[k] = m.at(k, j);
    f[j] = detail::Dft(col);
  }
  for (int r = 0; r < rounds; ++r) {
    double mx = 0;
    for (auto& col : f) {
      for (auto& z : col) {
        z *= z;
        mx = std::max(mx, std::abs(z));
      }
    }
    if (!(mx > 0)) throw std::domain_error("iterate_map: spectrum vanished");
    for (auto& col : f) {
      for (auto& z : col) z /= mx;
    }
  }
  std::vector<double> out(static_cast<size_t>(d) * d);
  double scale = 0, residue = 0;
  for (int j = 0; j < d; ++j) {
    auto col = detail::Dft(f[j]);
    for (int k = 0; k < d; ++k) {
      out[static_cast<size_t>(k) * d + j] = col[k].real();
      scale = std::max(scale, std::abs(col[k]));
      residue = std::max(residue, std::abs(col[k].imag()));
    }
  }
  if (residue > 1e-8 * scale) throw std::runtime_error("iterate_map: imaginary residue too large");
  for (double& x : out) {
    if (x < 0 && x > -1e-10 * scale) x = 0;
  }
  return BipartiteDiag(d, std::move(out));
}

// ((x+D)^{2^n} + (D-1) x^{2^n}) / (D [(x+D)^{2^n} + (D-1) D^{2^n}]), with
// every power taken relative to (x+D)^{2^n} so nothing overflows.
inline double ClosedFormLambda00(int d, double x, int n) {
  if (d < 2 || (d & (d - 1)) != 0) throw std::invalid_argument("D must be a power of two >= 2");
  if (!(x >= 0)) throw std::invalid_argument("x must be >= 0");
  if (n < 0 || n > 60) throw std::invalid_argument("n must be in 0..60");
  double e = std::ldexp(1.0, n);
  double la = std::log(x + d);
  double rx = std::exp(e * (std::log(x) - la));  // (x/(x+D))^{2^n}; 0 when x = 0
  double rd = std::exp(e * (std::log(static_cast<double>(d)) - la));
  return (1 + (d - 1) * rx) / (d * (1 + (d - 1) * rd));
}

}  // namespace gsp
