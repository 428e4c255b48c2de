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

// Inverse design of symmetric targets sum_k d_k |D_N(k)>.
//
// With K the largest index carrying a nonzero target coefficient, the
// design polynomial is
//
//   P(z) = sum_{k=0}^{K} (-1)^{K-k} sqrt(binom(N,k) / binom(N,K)) d_k z^k.
//
// Source i <= K is oriented so that alpha_i / beta_i is the i-th root of P;
// the remaining N - K sources emit sigma+. All fibers present, phases 0.

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

#include "polent/dicke.hpp"
#include "polent/errors.hpp"
#include "polent/qstate.hpp"
#include "polent/setup.hpp"

namespace polent {

/// Target coefficients at or below this fraction of the largest one are
/// treated as zero when fixing the degree.
inline constexpr double kDegreeTolerance = 1e-12;

struct DesignPolynomial {
  int degree = 0;
  std::vector<complex> coefficients;  // p_0..p_degree, p_degree != 0

  complex operator()(complex z) const {
    complex acc{0.0, 0.0};
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  double max_coefficient() const {
    double m = 0.0;
    for (const auto& c : coefficients) m = std::max(m, std::abs(c));
    return m;
  }
};

inline DesignPolynomial build_polynomial(std::span<const complex> d) {
  if (d.size() < 2) throw std::invalid_argument("build_polynomial: need coefficients d_0..d_N with N >= 1");
  double largest = 0.0;
  for (const auto& x : d) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
      throw std::invalid_argument("build_polynomial: non-finite target coefficient");
    }
    largest = std::max(largest, std::abs(x));
  }
  if (largest == 0.0) throw std::invalid_argument("build_polynomial: all-zero target");

  const int n = static_cast<int>(d.size()) - 1;
  int top = n;
  while (std::abs(d[top]) <= kDegreeTolerance * largest) --top;

  DesignPolynomial p;
  p.degree = top;
  p.coefficients.resize(static_cast<std::size_t>(top) + 1);
  const double norm_top = binomial(n, top);
  for (int k = 0; k <= top; ++k) {
    const double sign = ((top - k) % 2 == 0) ? 1.0 : -1.0;
    p.coefficients[k] = sign * std::sqrt(binomial(n, k) / norm_top) * d[k];
  }
  return p;
}

namespace detail {

inline complex polish_root(const DesignPolynomial& p, complex r) {
  // Newton steps, kept only while the residual strictly decreases.
  complex best = r;
  double best_residual = std::abs(p(r));
  for (int iter = 0; iter < 60 && best_residual > 0.0; ++iter) {
    complex value{0.0, 0.0};
    complex slope{0.0, 0.0};
    for (auto it = p.coefficients.rbegin(); it != p.coefficients.rend(); ++it) {
      slope = slope * best + value;
      value = value * best + *it;
    }
    if (slope == complex{0.0, 0.0}) break;
    const complex step = value / slope;
    const complex candidate = best - step;
    const double residual = std::abs(p(candidate));
    if (!(residual < best_residual)) break;
    best = candidate;
    best_residual = residual;
    if (std::abs(step) <= 1e-17 * std::max(1.0, std::abs(best))) break;
  }
  return best;
}

}  // namespace detail

/// All `degree` roots with multiplicity: companion-matrix eigenvalues, then
/// Newton polishing. Sorted by (real, imag).
inline std::vector<complex> find_roots(const DesignPolynomial& p) {
  if (p.degree < 0 || p.coefficients.size() != static_cast<std::size_t>(p.degree) + 1) {
    throw std::invalid_argument("find_roots: malformed polynomial");
  }
  const int k = p.degree;
  if (k == 0) return {};
  const complex lead = p.coefficients[k];
  if (lead == complex{0.0, 0.0}) throw std::invalid_argument("find_roots: leading coefficient is zero");

  std::vector<complex> roots;
  if (k == 1) {
    roots.push_back(-p.coefficients[0] / lead);
  } else {
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(k, k);
    for (int i = 1; i < k; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < k; ++i) companion(i, k - 1) = -p.coefficients[i] / lead;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    if (solver.info() != Eigen::Success) throw NumericalError("find_roots: eigenvalue solver did not converge");
    const auto& values = solver.eigenvalues();
    for (int i = 0; i < k; ++i) roots.push_back(detail::polish_root(p, values[i]));
  }
  std::sort(roots.begin(), roots.end(), [](const complex& a, const complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

/// Source i < roots.size() gets (r_i, 1)/sqrt(1 + |r_i|^2); the rest sigma+.
inline std::vector<PolarizerSetting> settings_from_roots(std::span<const complex> roots, int n) {
  if (n < 1) throw std::invalid_argument("settings_from_roots: n must be positive");
  if (roots.size() > static_cast<std::size_t>(n)) {
    throw std::invalid_argument("settings_from_roots: more roots than sources");
  }
  std::vector<PolarizerSetting> out(static_cast<std::size_t>(n), PolarizerSetting::sigma_plus());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const complex r = roots[i];
    const double scale = std::max(1.0, std::abs(r));
    const complex a = r / scale;
    const complex b = complex{1.0 / scale, 0.0};
    const double norm = std::sqrt(std::norm(a) + std::norm(b));
    out[i] = PolarizerSetting{a / norm, b / norm};
  }
  return out;
}

/// Fully connected, phase-0 setup producing the symmetric state with Dicke
/// coefficients proportional to `d` (d.size() == n + 1).
inline SetupConfig design_symmetric(std::span<const complex> d, int n) {
  if (n < 1) throw std::invalid_argument("design_symmetric: n must be positive");
  if (d.size() != static_cast<std::size_t>(n) + 1) {
    throw std::invalid_argument("design_symmetric: expected n + 1 target coefficients");
  }
  const DesignPolynomial p = build_polynomial(d);
  const std::vector<complex> roots = find_roots(p);
  return SetupConfig::make(settings_from_roots(roots, n), FiberNetwork::fully_connected(n));
}

}  // namespace polent
