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

// Total angular momentum eigenstates |S_1, S_2, ..., S_N; m_s> of N
// photonic qubits and the fiber-wiring protocol that produces them.
//
// Spin values are stored doubled (S = 3/2 is stored as 3). The atomic
// ground state |+> corresponds to sigma-, so m_s = (N_minus - N_plus) / 2
// and "spin up" is bit value 1 in the photonic basis.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "polent/errors.hpp"
#include "polent/qstate.hpp"
#include "polent/setup.hpp"

namespace polent {

/// Upper bound for angmom_basis: 2^n states of 2^n amplitudes each.
inline constexpr int kDefaultBasisCap = 10;

struct CouplingPath {
  std::vector<int> twice_spins;  // 2 S_1, ..., 2 S_N
  int twice_m = 0;               // 2 m_s

  int n() const noexcept { return static_cast<int>(twice_spins.size()); }

  friend bool operator==(const CouplingPath&, const CouplingPath&) = default;
};

enum class PathViolationKind { empty, first_spin, negative_spin, step_size, m_out_of_range, m_parity, too_long };

struct PathViolation {
  PathViolationKind kind;
  int position = -1;  // 0-based index into the spin list, -1 if not applicable
  std::string message;
};

inline std::vector<PathViolation> validate_path(const CouplingPath& path) {
  std::vector<PathViolation> out;
  const auto& s = path.twice_spins;
  if (s.empty()) {
    out.push_back({PathViolationKind::empty, -1, "coupling path is empty"});
    return out;
  }
  if (path.n() > kMaxRepresentableModes) {
    out.push_back({PathViolationKind::too_long, -1, "coupling path longer than 30 qubits"});
  }
  if (s[0] != 1) out.push_back({PathViolationKind::first_spin, 0, "S_1 must be 1/2"});
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (s[j] < 0) out.push_back({PathViolationKind::negative_spin, static_cast<int>(j), "negative spin"});
    if (j > 0 && std::abs(s[j] - s[j - 1]) != 1) {
      out.push_back({PathViolationKind::step_size, static_cast<int>(j),
                     "S_" + std::to_string(j + 1) + " differs from S_" + std::to_string(j) + " by more than 1/2"});
    }
  }
  if (std::abs(path.twice_m) > s.back()) {
    out.push_back({PathViolationKind::m_out_of_range, -1, "|m_s| exceeds S_N"});
  }
  if (((path.twice_m - path.n()) % 2 + 2) % 2 != 0) {
    out.push_back({PathViolationKind::m_parity, -1, "m_s must be congruent to N/2 modulo 1"});
  }
  return out;
}

class PathError : public std::invalid_argument {
 public:
  explicit PathError(std::vector<PathViolation> violations)
      : std::invalid_argument(summarize(violations)), violations_(std::move(violations)) {}
  const std::vector<PathViolation>& violations() const noexcept { return violations_; }

 private:
  static std::string summarize(const std::vector<PathViolation>& v) {
    std::string s = "invalid coupling path:";
    for (const auto& x : v) s += " " + x.message + ";";
    return s;
  }
  std::vector<PathViolation> violations_;
};

inline void require_valid(const CouplingPath& path) {
  auto v = validate_path(path);
  if (!v.empty()) throw PathError(std::move(v));
}

// ---------------------------------------------------------------------------
// Path literal syntax: `1/2,1,3/2;m=+1/2`.

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline int parse_int(std::string_view s, std::string_view what) {
  s = trim(s);
  if (s.empty()) throw ParseError("path literal: empty " + std::string(what));
  std::size_t pos = 0;
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    pos = 1;
  }
  if (pos == s.size()) throw ParseError("path literal: bad " + std::string(what));
  long long v = 0;
  for (; pos < s.size(); ++pos) {
    if (!std::isdigit(static_cast<unsigned char>(s[pos]))) {
      throw ParseError("path literal: bad " + std::string(what) + " '" + std::string(s) + "'");
    }
    v = v * 10 + (s[pos] - '0');
    if (v > 1000000) throw ParseError("path literal: " + std::string(what) + " too large");
  }
  return static_cast<int>(neg ? -v : v);
}

/// "3/2" -> 3, "1" -> 2, "-1/2" -> -1.
inline int parse_twice_half_integer(std::string_view s, std::string_view what) {
  s = trim(s);
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return 2 * parse_int(s, what);
  if (parse_int(s.substr(slash + 1), what) != 2) {
    throw ParseError("path literal: " + std::string(what) + " must be an integer or half-integer");
  }
  return parse_int(s.substr(0, slash), what);
}

inline std::string format_twice(int twice, bool signed_form) {
  std::string body = (twice % 2 == 0) ? std::to_string(std::abs(twice) / 2) : std::to_string(std::abs(twice)) + "/2";
  if (twice < 0) return "-" + body;
  if (signed_form && twice > 0) return "+" + body;
  return body;
}

}  // namespace detail

inline CouplingPath parse_path_literal(std::string_view text) {
  const auto semi = text.find(';');
  if (semi == std::string_view::npos) throw ParseError("path literal: missing ';m=...'");
  CouplingPath path;
  std::string_view spins = text.substr(0, semi);
  while (true) {
    const auto comma = spins.find(',');
    path.twice_spins.push_back(detail::parse_twice_half_integer(spins.substr(0, comma), "spin"));
    if (comma == std::string_view::npos) break;
    spins.remove_prefix(comma + 1);
  }
  std::string_view m = detail::trim(text.substr(semi + 1));
  if (m.size() < 2 || m[0] != 'm' || detail::trim(m.substr(1)).empty() || detail::trim(m.substr(1))[0] != '=') {
    throw ParseError("path literal: expected 'm=' after ';'");
  }
  m = detail::trim(m.substr(1));
  path.twice_m = detail::parse_twice_half_integer(m.substr(1), "m");
  return path;
}

inline std::string format_path_literal(const CouplingPath& path) {
  std::string s;
  for (std::size_t j = 0; j < path.twice_spins.size(); ++j) {
    if (j) s += ',';
    s += detail::format_twice(path.twice_spins[j], false);
  }
  s += ";m=" + detail::format_twice(path.twice_m, true);
  return s;
}

// ---------------------------------------------------------------------------
// Reference eigenstates by sequential spin-1/2 addition (Condon-Shortley).

namespace detail {

/// All 2S_N + 1 members of the final multiplet, ordered by m from -S_N to +S_N.
inline std::vector<StateVector> coupled_multiplet(const std::vector<int>& twice_spins) {
  // S_1 = 1/2: m = -1/2 is sigma+ (bit 0), m = +1/2 is sigma- (bit 1).
  std::vector<StateVector> current{StateVector::basis(1, 0), StateVector::basis(1, 1)};
  int s = 1;
  for (std::size_t j = 1; j < twice_spins.size(); ++j) {
    const int modes = static_cast<int>(j) + 1;
    const int target = twice_spins[j];
    const bool raise = target > s;
    const std::size_t up_bit = std::size_t{1} << j;
    std::vector<StateVector> next;
    next.reserve(static_cast<std::size_t>(target) + 1);
    for (int mm = -target; mm <= target; mm += 2) {
      // |J, M> = a |S, M - 1/2>|up> + b |S, M + 1/2>|down>
      const double plus_ratio = static_cast<double>(s + mm + 1) / (2.0 * (s + 1));
      const double minus_ratio = static_cast<double>(s - mm + 1) / (2.0 * (s + 1));
      const double a = raise ? std::sqrt(plus_ratio) : -std::sqrt(minus_ratio);
      const double b = raise ? std::sqrt(minus_ratio) : std::sqrt(plus_ratio);
      StateVector v(modes);
      if (std::abs(mm - 1) <= s && a != 0.0) {
        const StateVector& lower = current[static_cast<std::size_t>((mm - 1 + s) / 2)];
        for (std::size_t i = 0; i < lower.dimension(); ++i) v[i | up_bit] += a * lower[i];
      }
      if (std::abs(mm + 1) <= s && b != 0.0) {
        const StateVector& upper = current[static_cast<std::size_t>((mm + 1 + s) / 2)];
        for (std::size_t i = 0; i < upper.dimension(); ++i) v[i] += b * upper[i];
      }
      next.push_back(std::move(v));
    }
    current = std::move(next);
    s = target;
  }
  return current;
}

}  // namespace detail

inline StateVector reference_state(const CouplingPath& path) {
  require_valid(path);
  const int top = path.twice_spins.back();
  auto multiplet = detail::coupled_multiplet(path.twice_spins);
  return canonical_phase(std::move(multiplet[static_cast<std::size_t>((path.twice_m + top) / 2)]));
}

struct BasisState {
  CouplingPath path;
  StateVector state;
};

/// Every coupling path of n qubits and every admissible m_s: 2^n pairwise
/// orthonormal states. Paths are enumerated with spin increases before
/// decreases; within a path m_s runs from +S_N down to -S_N.
inline std::vector<BasisState> angmom_basis(int n, int cap = kDefaultBasisCap) {
  if (n < 1) throw std::invalid_argument("angmom_basis: n must be positive");
  if (n > cap || n > kMaxRepresentableModes) {
    throw CapacityError("angmom_basis: n = " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  }
  std::vector<BasisState> out;
  std::vector<int> spins{1};
  auto recurse = [&](auto&& self) -> void {
    if (static_cast<int>(spins.size()) == n) {
      auto multiplet = detail::coupled_multiplet(spins);
      const int top = spins.back();
      for (int mm = top; mm >= -top; mm -= 2) {
        out.push_back({CouplingPath{spins, mm},
                       canonical_phase(std::move(multiplet[static_cast<std::size_t>((mm + top) / 2)]))});
      }
      return;
    }
    for (int step : {+1, -1}) {
      const int next = spins.back() + step;
      if (next < 0) continue;
      spins.push_back(next);
      self(self);
      spins.pop_back();
    }
  };
  recurse(recurse);
  return out;
}

// ---------------------------------------------------------------------------
// Wiring protocol.

/// How "all sources except those mentioned in case b" is read for a
/// detector whose spin increases.
enum class ExclusionRule {
  /// Skip only sources already paired off at earlier detectors.
  consumed_so_far,
  /// Skip every source that is paired off at any decreasing detector.
  all_pairs,
};

/// Compiles a coupling path into a setup:
///  1. N/2 - m_s sources (lowest indices) get sigma+, the remaining
///     N/2 + m_s get sigma-; every source is linked to detector 1.
///  2. For each later detector j: if S_j > S_{j-1} it is linked to all
///     sources not excluded by `rule`; if S_j < S_{j-1} it is linked to the
///     lowest-indexed unpaired sigma- source (phase pi) and the lowest-indexed
///     unpaired sigma+ source (phase 0), and both are unlinked from every
///     subsequent detector.
inline SetupConfig compile_protocol(const CouplingPath& path, ExclusionRule rule = ExclusionRule::consumed_so_far) {
  require_valid(path);
  const int n = path.n();
  const int n_plus = (n - path.twice_m) / 2;

  std::vector<PolarizerSetting> settings;
  settings.reserve(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    settings.push_back(s < n_plus ? PolarizerSetting::sigma_plus() : PolarizerSetting::sigma_minus());
  }

  // Pair assignment for every decreasing detector, in detector order.
  std::vector<int> pair_minus(static_cast<std::size_t>(n), -1);
  std::vector<int> pair_plus(static_cast<std::size_t>(n), -1);
  std::vector<int> paired_at(static_cast<std::size_t>(n), -1);  // detector index or -1
  {
    int next_plus = 0;
    int next_minus = n_plus;
    for (int j = 1; j < n; ++j) {
      if (path.twice_spins[j] > path.twice_spins[j - 1]) continue;
      if (next_plus >= n_plus || next_minus >= n) {
        throw std::logic_error("compile_protocol: ran out of unpaired sources");
      }
      pair_minus[j] = next_minus;
      pair_plus[j] = next_plus;
      paired_at[next_minus++] = j;
      paired_at[next_plus++] = j;
    }
  }

  FiberNetwork net(n);
  for (int s = 0; s < n; ++s) net.link(s, 0);
  for (int j = 1; j < n; ++j) {
    if (pair_minus[j] >= 0) {
      net.link(pair_minus[j], j, std::numbers::pi);
      net.link(pair_plus[j], j, 0.0);
      continue;
    }
    for (int s = 0; s < n; ++s) {
      const int p = paired_at[s];
      const bool excluded = rule == ExclusionRule::all_pairs ? p >= 0 : (p >= 0 && p < j);
      if (!excluded) net.link(s, j);
    }
  }
  return SetupConfig::make(std::move(settings), std::move(net));
}

}  // namespace polent
