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

// Experiment description: one polarization device per source and a fiber
// network whose entry (source n, detector m) is the complex coupling
// t_{n,m}. A zero coupling is a removed fiber; a present fiber carries
// e^{i phi_{n,m}}, or an arbitrary complex value when the config is lossy.

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "polent/errors.hpp"
#include "polent/qstate.hpp"

namespace polent {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kSettingNormTolerance = 1e-12;
inline constexpr double kUnimodularTolerance = 1e-12;

/// Polarization after the device in front of one source:
/// epsilon = alpha sigma+ + beta sigma-.
struct PolarizerSetting {
  complex alpha{1.0, 0.0};
  complex beta{0.0, 0.0};

  static PolarizerSetting sigma_plus() { return {complex{1.0, 0.0}, complex{0.0, 0.0}}; }
  static PolarizerSetting sigma_minus() { return {complex{0.0, 0.0}, complex{1.0, 0.0}}; }

  /// Wave-plate style parametrization: (cos theta, e^{i phi} sin theta).
  static PolarizerSetting from_angles(double theta, double phi) {
    return {complex{std::cos(theta), 0.0}, std::polar(std::sin(theta), phi)};
  }

  double squared_norm() const { return std::norm(alpha) + std::norm(beta); }
  bool is_normalized(double tol = kSettingNormTolerance) const {
    return std::abs(squared_norm() - 1.0) <= tol;
  }

  friend bool operator==(const PolarizerSetting&, const PolarizerSetting&) = default;
};

/// Reduces an arbitrary angle to [0, 2pi).
inline double reduce_phase(double phase) {
  if (!std::isfinite(phase)) throw std::invalid_argument("reduce_phase: non-finite phase");
  double r = std::fmod(phase, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

/// Optical phase k*R accumulated along a path, reduced to [0, 2pi).
///
/// The product and the reduction are carried out in extended precision so
/// that long fibers (k*R ~ 1e7 rad) keep their sub-picoradian phase.
inline double phase_from_length(double wavenumber, double path_length) {
  if (!(wavenumber > 0.0) || !std::isfinite(wavenumber)) {
    throw std::invalid_argument("phase_from_length: wavenumber must be positive and finite");
  }
  if (!(path_length >= 0.0) || !std::isfinite(path_length)) {
    throw std::invalid_argument("phase_from_length: path length must be non-negative and finite");
  }
  // 2pi as an unevaluated sum of two doubles (about 107 significant bits).
  constexpr double two_pi_hi = 6.283185307179586;
  constexpr double two_pi_lo = 2.4492935982947064e-16;
  double out = 0.0;
#if defined(__SIZEOF_FLOAT128__) && !defined(__clang__)
  if (wavenumber * path_length < 1e18) {
    using quad = __float128;
    const quad two_pi = static_cast<quad>(two_pi_hi) + static_cast<quad>(two_pi_lo);
    const quad product = static_cast<quad>(wavenumber) * static_cast<quad>(path_length);  // exact
    const auto turns = static_cast<long long>(product / two_pi);
    quad r = product - static_cast<quad>(turns) * two_pi;
    if (r < 0) r += two_pi;
    if (r >= two_pi) r -= two_pi;
    out = static_cast<double>(r);
  } else
#endif
  {
    const long double two_pi = static_cast<long double>(two_pi_hi) + static_cast<long double>(two_pi_lo);
    long double r = std::fmod(static_cast<long double>(wavenumber) * static_cast<long double>(path_length), two_pi);
    if (r < 0.0L) r += two_pi;
    out = static_cast<double>(r);
  }
  return out >= kTwoPi ? 0.0 : out;
}

class FiberNetwork {
 public:
  FiberNetwork() = default;

  /// An n x n network with every fiber removed.
  explicit FiberNetwork(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("FiberNetwork: negative size");
    couplings_.assign(static_cast<std::size_t>(n) * n, complex{0.0, 0.0});
  }

  /// Every source linked to every detector with phase 0.
  static FiberNetwork fully_connected(int n) {
    FiberNetwork net(n);
    for (auto& t : net.couplings_) t = 1.0;
    return net;
  }

  int size() const noexcept { return n_; }

  complex coupling(int source, int detector) const { return couplings_[offset(source, detector)]; }
  bool has_link(int source, int detector) const { return coupling(source, detector) != complex{0.0, 0.0}; }

  void set_coupling(int source, int detector, complex t) { couplings_[offset(source, detector)] = t; }

  /// Present fiber with accumulated phase `phase`.
  void link(int source, int detector, double phase = 0.0) {
    set_coupling(source, detector, unit_phasor(reduce_phase(phase)));
  }

  void remove(int source, int detector) { set_coupling(source, detector, complex{0.0, 0.0}); }

  /// Row-major view: entry source * n + detector.
  std::span<const complex> couplings() const noexcept { return couplings_; }

  /// e^{i phase}, exact at multiples of pi/2.
  static complex unit_phasor(double phase) {
    const double quarter = phase / (std::numbers::pi / 2.0);
    const double r = std::round(quarter);
    if (quarter == r) {
      switch (static_cast<long long>(r) & 3) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
      }
    }
    return std::polar(1.0, phase);
  }

  friend bool operator==(const FiberNetwork&, const FiberNetwork&) = default;

 private:
  std::size_t offset(int source, int detector) const {
    if (source < 0 || detector < 0 || source >= n_ || detector >= n_) {
      throw std::out_of_range("FiberNetwork: source/detector index out of range");
    }
    return static_cast<std::size_t>(source) * n_ + detector;
  }

  int n_ = 0;
  std::vector<complex> couplings_;
};

struct SetupConfig {
  int n_sources = 0;
  std::vector<PolarizerSetting> settings;
  FiberNetwork network;
  bool lossy = false;

  /// Convenience: consistent sizes taken from `settings`.
  static SetupConfig make(std::vector<PolarizerSetting> settings, FiberNetwork network, bool lossy = false) {
    SetupConfig c;
    c.n_sources = static_cast<int>(settings.size());
    c.settings = std::move(settings);
    c.network = std::move(network);
    c.lossy = lossy;
    return c;
  }

  friend bool operator==(const SetupConfig&, const SetupConfig&) = default;
};

enum class Severity { error, warning };

enum class ViolationKind {
  dimension_mismatch,
  normalization,
  non_finite,
  unreachable_source,
  non_unimodular,
};

struct Violation {
  ViolationKind kind;
  Severity severity;
  int source = -1;    // 0-based, -1 when not applicable
  int detector = -1;  // 0-based, -1 when not applicable
  std::string message;
};

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::dimension_mismatch: return "dimension_mismatch";
    case ViolationKind::normalization: return "normalization";
    case ViolationKind::non_finite: return "non_finite";
    case ViolationKind::unreachable_source: return "unreachable_source";
    case ViolationKind::non_unimodular: return "non_unimodular";
  }
  return "unknown";
}

inline bool has_errors(std::span<const Violation> violations) {
  for (const auto& v : violations) {
    if (v.severity == Severity::error) return true;
  }
  return false;
}

/// Collects every problem with `config`. Warnings (lossy couplings in a
/// config that allows them) do not prevent simulation.
inline std::vector<Violation> validate(const SetupConfig& config) {
  std::vector<Violation> out;
  const int n = config.n_sources;
  if (n < 1) {
    out.push_back({ViolationKind::dimension_mismatch, Severity::error, -1, -1, "n_sources must be positive"});
    return out;
  }
  if (static_cast<int>(config.settings.size()) != n) {
    out.push_back({ViolationKind::dimension_mismatch, Severity::error, -1, -1,
                   "expected " + std::to_string(n) + " settings, got " + std::to_string(config.settings.size())});
  }
  if (config.network.size() != n) {
    out.push_back({ViolationKind::dimension_mismatch, Severity::error, -1, -1,
                   "network is " + std::to_string(config.network.size()) + "x" +
                       std::to_string(config.network.size()) + ", expected " + std::to_string(n)});
  }

  for (std::size_t s = 0; s < config.settings.size(); ++s) {
    const auto& e = config.settings[s];
    const int src = static_cast<int>(s);
    if (!std::isfinite(e.alpha.real()) || !std::isfinite(e.alpha.imag()) || !std::isfinite(e.beta.real()) ||
        !std::isfinite(e.beta.imag())) {
      out.push_back({ViolationKind::non_finite, Severity::error, src, -1, "setting has non-finite components"});
    } else if (!e.is_normalized()) {
      out.push_back({ViolationKind::normalization, Severity::error, src, -1,
                     "|alpha|^2 + |beta|^2 = " + format_double(e.squared_norm())});
    }
  }

  const int m = config.network.size();
  for (int s = 0; s < m; ++s) {
    bool reachable = false;
    for (int d = 0; d < m; ++d) {
      const complex t = config.network.coupling(s, d);
      if (!std::isfinite(t.real()) || !std::isfinite(t.imag())) {
        out.push_back({ViolationKind::non_finite, Severity::error, s, d, "coupling is non-finite"});
        continue;
      }
      if (t == complex{0.0, 0.0}) continue;
      reachable = true;
      if (std::abs(std::abs(t) - 1.0) > kUnimodularTolerance) {
        out.push_back({ViolationKind::non_unimodular, config.lossy ? Severity::warning : Severity::error, s, d,
                       "|t| = " + format_double(std::abs(t))});
      }
    }
    if (!reachable) {
      out.push_back({ViolationKind::unreachable_source, Severity::error, s, -1, "source has no fiber to any detector"});
    }
  }
  return out;
}

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations)
      : std::runtime_error(summarize(violations)), violations_(std::move(violations)) {}
  explicit ValidationError(const std::string& message) : std::runtime_error(message) {}

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  static std::string summarize(const std::vector<Violation>& violations) {
    std::string s = "invalid setup:";
    for (const auto& v : violations) {
      if (v.severity != Severity::error) continue;
      s += " [";
      s += to_string(v.kind);
      s += "] ";
      s += v.message;
      s += ';';
    }
    return s;
  }

  std::vector<Violation> violations_;
};

inline void require_valid(const SetupConfig& config) {
  auto findings = validate(config);
  if (has_errors(findings)) throw ValidationError(std::move(findings));
}

}  // namespace polent
