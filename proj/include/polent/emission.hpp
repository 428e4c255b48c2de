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

// Forward model. Each source n contributes the single-occupancy emission
// operator
//
//   P_n = sum_m t_{n,m} (alpha_n |sigma+>_m<0| + beta_n |sigma->_m<0|),
//
// which only creates a photon in a mode that is still empty. Applying all
// N operators to the vacuum and keeping the fully occupied sector gives the
// post-selected state with exactly one photon per detector.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "polent/errors.hpp"
#include "polent/qstate.hpp"
#include "polent/setup.hpp"

namespace polent {

/// Default limit for the N! permutation expansion.
inline constexpr int kDefaultOracleCap = 8;

/// Key for a partially populated set of modes. Only bits set in
/// `occupied` are meaningful in `minus`.
struct OccupationKey {
  std::uint32_t occupied = 0;
  std::uint32_t minus = 0;

  friend auto operator<=>(const OccupationKey&, const OccupationKey&) = default;
};

/// Amplitudes over the at-most-one-photon-per-mode sector.
class PartialState {
 public:
  using Terms = std::map<OccupationKey, complex>;

  /// The vacuum |0,...,0>.
  explicit PartialState(int n_modes) : n_modes_(n_modes) {
    if (n_modes < 1 || n_modes > kMaxRepresentableModes) {
      throw std::invalid_argument("PartialState: mode count out of range");
    }
    terms_.emplace(OccupationKey{}, complex{1.0, 0.0});
  }

  int n_modes() const noexcept { return n_modes_; }
  /// Number of emission operators applied so far.
  int photons() const noexcept { return std::popcount(applied_); }
  bool source_applied(int source) const { return (applied_ >> source) & 1U; }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const Terms& terms() const noexcept { return terms_; }

  complex amplitude(OccupationKey key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? complex{0.0, 0.0} : it->second;
  }

 private:
  friend PartialState apply_emission(const PartialState&, int, const SetupConfig&);

  int n_modes_;
  std::uint32_t applied_ = 0;
  Terms terms_;
};

/// P_source applied to `state`. Sources are 0-based.
inline PartialState apply_emission(const PartialState& state, int source, const SetupConfig& config) {
  const int n = state.n_modes();
  if (config.network.size() != n || static_cast<int>(config.settings.size()) != n) {
    throw std::invalid_argument("apply_emission: config size does not match state");
  }
  if (source < 0 || source >= n) throw std::out_of_range("apply_emission: source index out of range");
  if (state.source_applied(source)) throw std::logic_error("apply_emission: source already applied");

  const PolarizerSetting& e = config.settings[source];
  PartialState next(n);
  next.terms_.clear();
  next.applied_ = state.applied_ | (std::uint32_t{1} << source);

  for (const auto& [key, amp] : state.terms()) {
    for (int m = 0; m < n; ++m) {
      const std::uint32_t bit = std::uint32_t{1} << m;
      if (key.occupied & bit) continue;
      const complex t = config.network.coupling(source, m);
      if (t == complex{0.0, 0.0}) continue;
      const complex base = amp * t;
      const std::uint32_t occ = key.occupied | bit;
      if (e.alpha != complex{0.0, 0.0}) next.terms_[OccupationKey{occ, key.minus}] += base * e.alpha;
      if (e.beta != complex{0.0, 0.0}) next.terms_[OccupationKey{occ, key.minus | bit}] += base * e.beta;
    }
  }
  return next;
}

/// Unnormalized post-selected state together with its squared norm.
struct RawState {
  StateVector amplitudes;
  double squared_norm = 0.0;
  /// Set when every amplitude cancelled (up to rounding).
  bool destructive_interference = false;

  StateVector normalized() const {
    if (destructive_interference) throw NumericalError("post-selected state vanishes by destructive interference");
    return normalize(amplitudes);
  }
};

namespace detail {

// Sum of the magnitudes of every term that can reach the output; the
// output norm is measured against it to decide whether it cancelled.
inline double amplitude_scale(const SetupConfig& config) {
  double scale = 1.0;
  const int n = config.n_sources;
  for (int s = 0; s < n; ++s) {
    double row = 0.0;
    for (int d = 0; d < n; ++d) row += std::abs(config.network.coupling(s, d));
    const auto& e = config.settings[s];
    scale *= row * (std::abs(e.alpha) + std::abs(e.beta));
  }
  return scale;
}

inline RawState finish(StateVector v, const SetupConfig& config) {
  RawState raw{std::move(v), 0.0, false};
  raw.squared_norm = raw.amplitudes.squared_norm();
  const double floor = 1e-12 * amplitude_scale(config);
  raw.destructive_interference = raw.squared_norm <= floor * floor;
  return raw;
}

inline void require_simulatable(const SetupConfig& config, int mode_cap) {
  require_valid(config);
  if (config.n_sources > std::min(mode_cap, kMaxRepresentableModes)) {
    throw CapacityError("number of sources " + std::to_string(config.n_sources) + " exceeds mode cap " +
                        std::to_string(mode_cap));
  }
}

}  // namespace detail

/// P_{order[N-1]} ... P_{order[0]} |0...0>, projected onto the fully
/// occupied sector.
inline RawState generate_state(const SetupConfig& config, std::span<const int> order,
                               int mode_cap = kDefaultModeCap) {
  detail::require_simulatable(config, mode_cap);
  const int n = config.n_sources;
  if (static_cast<int>(order.size()) != n) throw std::invalid_argument("generate_state: order must list every source");

  PartialState state(n);
  for (int source : order) state = apply_emission(state, source, config);

  StateVector out(n);
  const std::uint32_t full = n == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
  for (const auto& [key, amp] : state.terms()) {
    if (key.occupied == full) out[key.minus] += amp;
  }
  return detail::finish(std::move(out), config);
}

inline RawState generate_state(const SetupConfig& config, int mode_cap = kDefaultModeCap) {
  std::vector<int> order(static_cast<std::size_t>(std::max(config.n_sources, 0)));
  std::iota(order.begin(), order.end(), 0);
  return generate_state(config, order, mode_cap);
}

/// Independent expansion: sum over all N! bijections pi from sources to
/// detectors of prod_n t_{n,pi(n)} times the product state that places
/// epsilon_n in mode pi(n).
inline RawState permutation_oracle(const SetupConfig& config, int oracle_cap = kDefaultOracleCap) {
  require_valid(config);
  const int n = config.n_sources;
  if (n > oracle_cap) {
    throw CapacityError("permutation oracle limited to " + std::to_string(oracle_cap) + " sources, got " +
                        std::to_string(n));
  }
  if (n > kMaxRepresentableModes) throw CapacityError("permutation oracle: too many sources");

  StateVector out(n);
  std::vector<int> target(static_cast<std::size_t>(n));
  std::iota(target.begin(), target.end(), 0);
  do {
    complex weight{1.0, 0.0};
    for (int s = 0; s < n && weight != complex{0.0, 0.0}; ++s) weight *= config.network.coupling(s, target[s]);
    if (weight == complex{0.0, 0.0}) continue;
    for (std::size_t b = 0; b < out.dimension(); ++b) {
      complex amp = weight;
      for (int s = 0; s < n; ++s) {
        const auto& e = config.settings[s];
        amp *= ((b >> target[s]) & 1U) ? e.beta : e.alpha;
      }
      out[b] += amp;
    }
  } while (std::next_permutation(target.begin(), target.end()));
  return detail::finish(std::move(out), config);
}

/// Probability of the N-fold coincidence, |psi_f|^2 / N^N. Relative figure
/// of merit once fibers are removed.
inline double success_weight(const RawState& raw, int n) {
  if (n < 1) throw std::invalid_argument("success_weight: n must be positive");
  return raw.squared_norm / std::pow(static_cast<double>(n), n);
}

}  // namespace polent
