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

// Dense state vectors over the 2^N polarization basis of N photonic modes.
//
// Basis convention: bit m of a basis index describes mode m (0-based);
// 0 is sigma+, 1 is sigma-. The number of sigma- excitations of a basis
// ket is therefore its popcount.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polent/errors.hpp"

namespace polent {

using complex = std::complex<double>;

enum class Polarization : std::uint8_t { plus = 0, minus = 1 };

/// Default upper bound on the number of modes handled by the engines.
inline constexpr int kDefaultModeCap = 14;
/// Hard limit imposed by the 32-bit basis keys.
inline constexpr int kMaxRepresentableModes = 30;

/// Amplitudes at or below this fraction of the largest magnitude are
/// treated as zero when fixing the global phase and when dumping.
inline constexpr double kNegligibleAmplitude = 1e-14;

inline std::size_t basis_index(std::span<const Polarization> polarizations) {
  if (polarizations.empty()) {
    throw std::invalid_argument("basis_index: empty polarization list");
  }
  if (polarizations.size() > static_cast<std::size_t>(kMaxRepresentableModes)) {
    throw CapacityError("basis_index: too many modes");
  }
  std::size_t index = 0;
  for (std::size_t m = 0; m < polarizations.size(); ++m) {
    if (polarizations[m] == Polarization::minus) index |= std::size_t{1} << m;
  }
  return index;
}

inline std::vector<Polarization> polarizations_of(std::size_t index, int n_modes) {
  if (n_modes < 1 || n_modes > kMaxRepresentableModes) {
    throw std::invalid_argument("polarizations_of: mode count out of range");
  }
  if (index >> n_modes) throw std::out_of_range("polarizations_of: index out of range");
  std::vector<Polarization> out(static_cast<std::size_t>(n_modes));
  for (int m = 0; m < n_modes; ++m) {
    out[m] = ((index >> m) & 1U) ? Polarization::minus : Polarization::plus;
  }
  return out;
}

/// Mode 0 is written leftmost.
inline std::string bitstring(std::size_t index, int n_modes) {
  std::string s(static_cast<std::size_t>(n_modes), '0');
  for (int m = 0; m < n_modes; ++m) {
    if ((index >> m) & 1U) s[m] = '1';
  }
  return s;
}

class StateVector {
 public:
  /// The zero vector on `n_modes` modes.
  explicit StateVector(int n_modes) : n_modes_(checked_modes(n_modes)) {
    amplitudes_.assign(std::size_t{1} << n_modes_, complex{0.0, 0.0});
  }

  StateVector(int n_modes, std::vector<complex> amplitudes)
      : n_modes_(checked_modes(n_modes)), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != (std::size_t{1} << n_modes_)) {
      throw std::invalid_argument("StateVector: amplitude count must be 2^n_modes");
    }
  }

  static StateVector basis(int n_modes, std::size_t index) {
    StateVector v(n_modes);
    if (index >= v.dimension()) throw std::out_of_range("StateVector::basis: index out of range");
    v.amplitudes_[index] = 1.0;
    return v;
  }

  int n_modes() const noexcept { return n_modes_; }
  std::size_t dimension() const noexcept { return amplitudes_.size(); }

  std::span<const complex> amplitudes() const noexcept { return amplitudes_; }
  std::span<complex> amplitudes() noexcept { return amplitudes_; }

  const complex& operator[](std::size_t i) const { return amplitudes_[i]; }
  complex& operator[](std::size_t i) { return amplitudes_[i]; }

  double squared_norm() const noexcept {
    double s = 0.0;
    for (const auto& a : amplitudes_) s += std::norm(a);
    return s;
  }
  double norm() const noexcept { return std::sqrt(squared_norm()); }

  bool is_normalized(double tol = 1e-12) const noexcept {
    return std::abs(squared_norm() - 1.0) <= tol;
  }

  double max_magnitude() const noexcept {
    double m = 0.0;
    for (const auto& a : amplitudes_) m = std::max(m, std::abs(a));
    return m;
  }

  StateVector& operator*=(complex c) {
    for (auto& a : amplitudes_) a *= c;
    return *this;
  }

  StateVector& operator+=(const StateVector& other) {
    require_same_modes(other, "StateVector::operator+=");
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) amplitudes_[i] += other.amplitudes_[i];
    return *this;
  }

  StateVector& operator-=(const StateVector& other) {
    require_same_modes(other, "StateVector::operator-=");
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) amplitudes_[i] -= other.amplitudes_[i];
    return *this;
  }

  void require_same_modes(const StateVector& other, const char* where) const {
    if (other.n_modes_ != n_modes_) {
      throw std::invalid_argument(std::string(where) + ": mode count mismatch");
    }
  }

 private:
  static int checked_modes(int n) {
    if (n < 1) throw std::invalid_argument("StateVector: n_modes must be positive");
    if (n > kMaxRepresentableModes) throw CapacityError("StateVector: n_modes exceeds 30");
    return n;
  }

  int n_modes_;
  std::vector<complex> amplitudes_;
};

inline StateVector operator*(complex c, StateVector v) { return v *= c; }
inline StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
inline StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }

/// <a|b>, antilinear in the first argument.
inline complex inner_product(const StateVector& a, const StateVector& b) {
  a.require_same_modes(b, "inner_product");
  complex s{0.0, 0.0};
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

/// Rotates the global phase so that the first non-negligible amplitude is
/// real and positive. The zero vector is returned unchanged.
inline StateVector canonical_phase(StateVector v) {
  const double largest = v.max_magnitude();
  if (largest == 0.0) return v;
  const double cutoff = kNegligibleAmplitude * largest;
  for (std::size_t i = 0; i < v.dimension(); ++i) {
    const double mag = std::abs(v[i]);
    if (mag > cutoff) {
      v *= std::conj(v[i]) / mag;
      v[i] = mag;
      break;
    }
  }
  return v;
}

inline StateVector normalize(StateVector v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw NumericalError("normalize: vector has zero or non-finite norm");
  }
  v *= complex{1.0 / n, 0.0};
  return canonical_phase(std::move(v));
}

/// |<a|b>|^2 / (|a|^2 |b|^2), clamped to [0, 1].
inline double fidelity(const StateVector& a, const StateVector& b) {
  a.require_same_modes(b, "fidelity");
  const double na = a.squared_norm();
  const double nb = b.squared_norm();
  if (!(na > 0.0) || !(nb > 0.0)) throw NumericalError("fidelity: zero vector");
  const double f = std::norm(inner_product(a, b)) / (na * nb);
  return std::clamp(f, 0.0, 1.0);
}

/// Exchanges the qubits carried by modes i and j.
inline StateVector swap_modes(const StateVector& v, int i, int j) {
  if (i < 0 || j < 0 || i >= v.n_modes() || j >= v.n_modes()) {
    throw std::out_of_range("swap_modes: mode index out of range");
  }
  StateVector out(v.n_modes());
  for (std::size_t b = 0; b < v.dimension(); ++b) {
    const std::size_t bi = (b >> i) & 1U;
    const std::size_t bj = (b >> j) & 1U;
    std::size_t t = b;
    if (bi != bj) t ^= (std::size_t{1} << i) | (std::size_t{1} << j);
    out[t] = v[b];
  }
  return out;
}

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
  return buf;
}

/// One line per non-negligible amplitude: `<bitstring> <re> <im>`.
inline std::string format_dump(const StateVector& v) {
  std::string out;
  const double cutoff = kNegligibleAmplitude * v.max_magnitude();
  for (std::size_t i = 0; i < v.dimension(); ++i) {
    const complex a = v[i];
    if (std::abs(a) <= cutoff || std::abs(a) == 0.0) continue;
    out += bitstring(i, v.n_modes());
    out += ' ';
    out += format_double(a.real());
    out += ' ';
    out += format_double(a.imag());
    out += '\n';
  }
  return out;
}

/// Inverse of format_dump. Blank lines and lines starting with '#' are
/// ignored; the mode count is taken from the bitstring length.
inline StateVector parse_dump(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::pair<std::string, complex>> entries;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string bits, re_s, im_s, extra;
    if (!(fields >> bits >> re_s >> im_s) || (fields >> extra)) {
      throw ParseError("dump line " + std::to_string(line_no) + ": expected `<bitstring> <re> <im>`");
    }
    if (bits.find_first_not_of("01") != std::string::npos) {
      throw ParseError("dump line " + std::to_string(line_no) + ": bitstring must contain only 0/1");
    }
    double re = 0.0, im = 0.0;
    try {
      std::size_t p1 = 0, p2 = 0;
      re = std::stod(re_s, &p1);
      im = std::stod(im_s, &p2);
      if (p1 != re_s.size() || p2 != im_s.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError("dump line " + std::to_string(line_no) + ": bad number");
    }
    entries.emplace_back(bits, complex{re, im});
  }
  if (entries.empty()) throw ParseError("dump: no amplitudes");
  const int n = static_cast<int>(entries.front().first.size());
  if (n < 1 || n > kMaxRepresentableModes) throw ParseError("dump: unsupported bitstring length");
  StateVector v(n);
  for (const auto& [bits, amp] : entries) {
    if (static_cast<int>(bits.size()) != n) throw ParseError("dump: inconsistent bitstring lengths");
    std::size_t index = 0;
    for (int m = 0; m < n; ++m) {
      if (bits[m] == '1') index |= std::size_t{1} << m;
    }
    v[index] += amp;
  }
  return v;
}

}  // namespace polent
