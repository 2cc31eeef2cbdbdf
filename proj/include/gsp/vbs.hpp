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

// A three-qubit valence bond state: two Bell pairs joined by a projector
// P = sum alpha_{j,ik} |j><i|<k| on the middle two qubits.
//
// Amplitude vectors list qubits most significant first; the three-qubit
// state is ordered (a, j, b) with a, b the outer qubits.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace gsp {

using cd = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;

// alpha[k](j, i) = alpha_{j,ik}.
struct ValenceProjector {
  Mat2 alpha0 = Mat2::Zero();
  Mat2 alpha1 = Mat2::Zero();

  const Mat2& operator[](int k) const { return k ? alpha1 : alpha0; }

  // Rows j, columns ik in the order 00, 01, 10, 11.
  Eigen::Matrix<cd, 2, 4> AsMatrix() const {
    Eigen::Matrix<cd, 2, 4> m;
    for (int j = 0; j < 2; ++j) {
      for (int i = 0; i < 2; ++i) {
        for (int k = 0; k < 2; ++k) m(j, 2 * i + k) = (*this)[k](j, i);
      }
    }
    return m;
  }

  static ValenceProjector FromMatrix(const Eigen::Matrix<cd, 2, 4>& m) {
    ValenceProjector p;
    for (int j = 0; j < 2; ++j) {
      for (int i = 0; i < 2; ++i) {
        p.alpha0(j, i) = m(j, 2 * i);
        p.alpha1(j, i) = m(j, 2 * i + 1);
      }
    }
    return p;
  }

  double scale() const { return std::max(alpha0.cwiseAbs().maxCoeff(), alpha1.cwiseAbs().maxCoeff()); }
};

inline Mat2 PauliZ() {
  Mat2 z;
  z << 1, 0, 0, -1;
  return z;
}

inline int ProjectorRank(const ValenceProjector& p, double tol = 1e-10) {
  Eigen::JacobiSVD<Eigen::Matrix<cd, 2, 4>> svd(p.AsMatrix());
  auto s = svd.singularValues();
  int r = 0;
  for (int i = 0; i < s.size(); ++i) r += s(i) > tol * std::max(1.0, s(0));
  return r;
}

struct PureState {
  int qubits = 0;
  std::vector<cd> amp;
};

namespace detail {

inline PureState Normalize(int qubits, std::vector<cd> amp) {
  double n2 = 0;
  for (auto& a : amp) n2 += std::norm(a);
  if (!(n2 > 1e-300)) throw std::domain_error("projection has zero norm");
  double inv = 1 / std::sqrt(n2);
  for (auto& a : amp) a *= inv;
  return {qubits, std::move(amp)};
}

// Unnormalized (a, j, b) amplitudes alpha^b(j, a).
inline std::vector<cd> InitialAmplitudes(const ValenceProjector& p) {
  std::vector<cd> amp(8);
  for (int a = 0; a < 2; ++a) {
    for (int j = 0; j < 2; ++j) {
      for (int b = 0; b < 2; ++b) amp[4 * a + 2 * j + b] = p[b](j, a);
    }
  }
  return amp;
}

// v = c * t for some nonzero c. Returns c.
inline std::optional<cd> Proportional(const std::vector<cd>& v, const std::vector<cd>& t, double tol) {
  size_t idx = 0;
  for (size_t i = 1; i < t.size(); ++i) {
    if (std::abs(t[i]) > std::abs(t[idx])) idx = i;
  }
  if (std::abs(t[idx]) < 1e-300) return std::nullopt;
  cd c = v[idx] / t[idx];
  double err = 0, ref = 0;
  for (size_t i = 0; i < t.size(); ++i) {
    err = std::max(err, std::abs(v[i] - c * t[i]));
    ref = std::max(ref, std::abs(v[i]));
  }
  if (std::abs(c) < 1e-300 || err > tol * std::max(1.0, ref)) return std::nullopt;
  return c;
}

}  // namespace detail

// (1 x P0 x 1)|phi>_{12}|phi>_{34}, normalized.
inline PureState BuildInitial(const ValenceProjector& p) {
  return detail::Normalize(3, detail::InitialAmplitudes(p));
}

struct PairResult {
  PureState state;          // (a, j)
  double max_schmidt = 1;   // largest Schmidt coefficient
  bool entangled = false;
};

// Projects the last qubit of the initial state onto |0>.
inline PairResult ZMeasurePair(const ValenceProjector& p) {
  std::vector<cd> amp(4);
  for (int a = 0; a < 2; ++a) {
    for (int j = 0; j < 2; ++j) amp[2 * a + j] = p.alpha0(j, a);
  }
  PairResult r;
  r.state = detail::Normalize(2, amp);
  Mat2 m;
  m << r.state.amp[0], r.state.amp[1], r.state.amp[2], r.state.amp[3];
  Eigen::JacobiSVD<Mat2> svd(m);
  r.max_schmidt = svd.singularValues()(0);
  r.entangled = r.max_schmidt < 1 - 1e-12;
  return r;
}

inline bool Invertible(const Mat2& m) {
  double s = m.cwiseAbs().maxCoeff();
  return s > 0 && std::abs(m.determinant()) > 1e-12 * s * s;
}

// beta^i = alpha^i (alpha^0)^{-1}.
inline std::pair<Mat2, Mat2> BetaFromAlpha(const ValenceProjector& p) {
  if (!Invertible(p.alpha0)) throw std::domain_error("alpha^0 is singular");
  return {Mat2::Identity(), p.alpha1 * p.alpha0.inverse()};
}

// A P1 solving beta alpha^0 = alpha^1 and beta Z alpha^0 = Z alpha^1 in the
// least-squares sense. Works for singular alpha^0.
inline ValenceProjector DeriveP1(const ValenceProjector& p) {
  Eigen::Matrix<cd, 2, 4> m, n;
  Mat2 z = PauliZ();
  m << p.alpha0, z * p.alpha0;
  n << p.alpha1, z * p.alpha1;
  Eigen::Matrix<cd, 4, 2> mt = m.adjoint();
  Mat2 beta1 = mt.completeOrthogonalDecomposition().solve(n.adjoint().eval()).adjoint();
  return {Mat2::Identity(), beta1};
}

struct OptimalityReport {
  bool holds = false;
  double residual = 0;                 // relative Frobenius norm
  std::optional<bool> diagonal_check;  // alpha^0 (alpha^1)^{-1} diagonal, when defined
};

// [beta^i, Z] alpha^0 = 0. With singular alpha^0 the condition is checked as
// solvability of beta [alpha^0, Z alpha^0] = [alpha^1, Z alpha^1].
inline OptimalityReport OptimalityDetail(const ValenceProjector& p, double tol = 1e-10) {
  double s = p.scale();
  if (!(s > 0)) throw std::invalid_argument("projector is zero");
  ValenceProjector q{p.alpha0 / s, p.alpha1 / s};
  Mat2 z = PauliZ();
  OptimalityReport r;
  if (Invertible(q.alpha0)) {
    Mat2 beta1 = q.alpha1 * q.alpha0.inverse();
    r.residual = ((beta1 * z - z * beta1) * q.alpha0).norm();
  } else {
    Mat2 beta1 = DeriveP1(q).alpha1;
    r.residual = std::max((beta1 * q.alpha0 - q.alpha1).norm(), (beta1 * z * q.alpha0 - z * q.alpha1).norm());
  }
  r.holds = r.residual < tol;
  if (Invertible(q.alpha0) && Invertible(q.alpha1)) {
    Mat2 d = q.alpha0 * q.alpha1.inverse();
    double off = std::abs(d(0, 1)) + std::abs(d(1, 0));
    r.diagonal_check = off < tol * std::max(1.0, d.norm());
  }
  return r;
}

inline bool OptimalityCondition(const ValenceProjector& p) { return OptimalityDetail(p).holds; }

struct SymmetricEntries {
  cd a0_01, a0_10, a0_11, a1_01, a1_10, a1_11;
};

// Fills alpha_{j,00} = alpha_{j,01} alpha_{j,10} / alpha_{j,11}.
inline ValenceProjector SymmetricP0(const SymmetricEntries& e) {
  if (std::abs(e.a0_11) < 1e-300 || std::abs(e.a1_11) < 1e-300) {
    throw std::invalid_argument("alpha_{0,11} and alpha_{1,11} must be nonzero");
  }
  Eigen::Matrix<cd, 2, 4> m;
  m << e.a0_01 * e.a0_10 / e.a0_11, e.a0_01, e.a0_10, e.a0_11,
       e.a1_01 * e.a1_10 / e.a1_11, e.a1_01, e.a1_10, e.a1_11;
  return ValenceProjector::FromMatrix(m);
}

// Controlled phases theta1, theta2; theta1 = theta2 = pi is the linear cluster state.
inline ValenceProjector WeightedGraphP0(double theta1, double theta2) {
  return SymmetricP0({1, 1, 1, std::polar(1.0, theta1), std::polar(1.0, theta2), std::polar(1.0, theta1 + theta2)});
}

// |<x|y>|^2 for normalized states.
inline double Overlap(const PureState& x, const PureState& y) {
  if (x.amp.size() != y.amp.size()) throw std::invalid_argument("state sizes differ");
  cd s = 0;
  for (size_t i = 0; i < x.amp.size(); ++i) s += std::conj(x.amp[i]) * y.amp[i];
  return std::norm(s);
}

// sum_{a,j,b} (-1)^{aj + jb} |a j b> / sqrt(8).
inline PureState LinearCluster3() {
  std::vector<cd> amp(8);
  for (int i = 0; i < 8; ++i) {
    int a = i >> 2, j = (i >> 1) & 1, b = i & 1;
    amp[i] = ((a * j + j * b) % 2) ? -1.0 : 1.0;
  }
  return detail::Normalize(3, amp);
}

// (1 x P1 x 1)|psi_2>|phi> must equal |psi_initial> up to one scalar, and
// the same with Z on the middle qubit of psi_2 on the left and on the middle
// qubit of psi_initial on the right.
inline bool ReconstructionCheck(const ValenceProjector& p0, const ValenceProjector& p1, double tol = 1e-10) {
  auto target = detail::InitialAmplitudes(p0);
  std::vector<cd> target_z = target;
  for (int i = 0; i < 8; ++i) {
    if ((i >> 1) & 1) target_z[i] = -target_z[i];
  }
  // psi_2 (a, j) x phi (c, b) as 16 amplitudes over (a, j, c, b).
  auto apply = [&](bool z_on_j) {
    std::vector<cd> in(16), out(8, 0.0);
    for (int a = 0; a < 2; ++a) {
      for (int j = 0; j < 2; ++j) {
        for (int c = 0; c < 2; ++c) {
          for (int b = 0; b < 2; ++b) {
            cd v = (c == b) ? p0.alpha0(j, a) : cd(0);
            if (z_on_j && j) v = -v;
            in[8 * a + 4 * j + 2 * c + b] = v;
          }
        }
      }
    }
    for (int a = 0; a < 2; ++a) {
      for (int jp = 0; jp < 2; ++jp) {
        for (int b = 0; b < 2; ++b) {
          cd s = 0;
          for (int j = 0; j < 2; ++j) {
            for (int c = 0; c < 2; ++c) s += p1[c](jp, j) * in[8 * a + 4 * j + 2 * c + b];
          }
          out[4 * a + 2 * jp + b] = s;
        }
      }
    }
    return out;
  };
  auto c1 = detail::Proportional(apply(false), target, tol);
  auto c2 = detail::Proportional(apply(true), target_z, tol);
  return c1 && c2 && std::abs(*c1 - *c2) <= tol * std::max(1.0, std::abs(*c1));
}

}  // namespace gsp
