// Copyright 2026 The Polent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Symmetric (Dicke) subspace algebra.

#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "polent/errors.hpp"
#include "polent/qstate.hpp"
#include "polent/setup.hpp"

namespace polent {

/// Binomial coefficient as a double; exact for the mode counts in scope.
inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

inline double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

/// |D_n(k)>: equal superposition of the binom(n,k) kets with k sigma-.
inline StateVector dicke_state(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("dicke_state: k must lie in [0, n]");
  StateVector v(n);
  const double amp = 1.0 / std::sqrt(binomial(n, k));
  for (std::size_t b = 0; b < v.dimension(); ++b) {
    if (std::popcount(b) == k) v[b] = amp;
  }
  return v;
}

/// sum_k c_k |D_n(k)>, with n = c.size() - 1.
inline StateVector dicke_superposition(std::span<const complex> c) {
  if (c.size() < 2) throw std::invalid_argument("dicke_superposition: need at least two coefficients");
  const int n = static_cast<int>(c.size()) - 1;
  StateVector v(n);
  std::vector<double> inv_sqrt(c.size());
  for (int k = 0; k <= n; ++k) inv_sqrt[k] = 1.0 / std::sqrt(binomial(n, k));
  for (std::size_t b = 0; b < v.dimension(); ++b) {
    const int k = std::popcount(b);
    v[b] = c[k] * inv_sqrt[k];
  }
  return v;
}

/// Coefficients c_0..c_N of the phase-0, fully connected output state in
/// the Dicke basis:
///
///   c_k = binom(N,k)^{1/2} sum_{distinct i_1..i_N} beta_{i_1}..beta_{i_k} alpha_{i_{k+1}}..alpha_{i_N}.
///
/// The ordered-tuple sum equals k!(N-k)! times the x^k coefficient of
/// prod_n (alpha_n + beta_n x), which is expanded directly so that
/// alpha_n = 0 needs no special casing.
inline std::vector<complex> dicke_coefficients(std::span<const PolarizerSetting> settings) {
  if (settings.empty()) throw std::invalid_argument("dicke_coefficients: empty settings");
  const int n = static_cast<int>(settings.size());
  std::vector<complex> e(static_cast<std::size_t>(n) + 1, complex{0.0, 0.0});
  e[0] = 1.0;
  for (int i = 0; i < n; ++i) {
    const auto& s = settings[i];
    for (int k = i + 1; k >= 1; --k) e[k] = e[k] * s.alpha + e[k - 1] * s.beta;
    e[0] *= s.alpha;
  }
  for (int k = 0; k <= n; ++k) {
    e[k] *= std::sqrt(binomial(n, k)) * factorial(k) * factorial(n - k);
  }
  return e;
}

struct DickeExpansion {
  int n = 0;
  std::vector<complex> coefficients;  // d_0..d_n
  double residual_norm = 0.0;         // norm of the non-symmetric remainder
};

/// d_k = <D_N(k)|v> and the norm of what is left outside the symmetric subspace.
inline DickeExpansion decompose(const StateVector& v) {
  if (!(v.squared_norm() > 0.0)) throw NumericalError("decompose: zero vector");
  const int n = v.n_modes();
  DickeExpansion out;
  out.n = n;
  out.coefficients.assign(static_cast<std::size_t>(n) + 1, complex{0.0, 0.0});
  for (std::size_t b = 0; b < v.dimension(); ++b) out.coefficients[std::popcount(b)] += v[b];
  for (int k = 0; k <= n; ++k) out.coefficients[k] /= std::sqrt(binomial(n, k));

  const StateVector symmetric = dicke_superposition(out.coefficients);
  out.residual_norm = (v - symmetric).norm();
  return out;
}

}  // namespace polent
