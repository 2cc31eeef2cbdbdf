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

#pragma once

#include <cmath>
#include <stdexcept>

namespace gsp {

inline double Choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

// Locates the flip of a boolean predicate on [lo, hi]. The predicate must
// differ at the two ends; the result is within tol of the flip.
template <typename F>
double Bisect(F&& f, double lo, double hi, double tol = 1e-15, int max_iter = 200) {
  bool flo = f(lo);
  if (flo == f(hi)) throw std::domain_error("bisection bracket has no sign change");
  for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
    double mid = 0.5 * (lo + hi);
    (f(mid) == flo ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace gsp
