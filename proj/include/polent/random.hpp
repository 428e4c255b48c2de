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

// Random setups and targets for property checks and the oracle-check command.

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "polent/qstate.hpp"
#include "polent/setup.hpp"

namespace polent {

/// Uniform on the Bloch sphere.
template <class Rng>
PolarizerSetting random_setting(Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  complex a{g(rng), g(rng)};
  complex b{g(rng), g(rng)};
  const double norm = std::sqrt(std::norm(a) + std::norm(b));
  return {a / norm, b / norm};
}

struct RandomConfigOptions {
  bool random_phases = true;
  double removal_probability = 0.2;
};

/// Random settings, optionally random phases, and independent fiber removals.
/// A source left without fibers gets one random fiber back.
template <class Rng>
SetupConfig random_config(int n, Rng& rng, RandomConfigOptions options = {}) {
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, n - 1);

  std::vector<PolarizerSetting> settings;
  for (int s = 0; s < n; ++s) settings.push_back(random_setting(rng));

  FiberNetwork net(n);
  for (int s = 0; s < n; ++s) {
    bool any = false;
    for (int d = 0; d < n; ++d) {
      const double phi = options.random_phases ? phase(rng) : 0.0;
      if (coin(rng) < options.removal_probability) continue;
      net.link(s, d, phi);
      any = true;
    }
    if (!any) net.link(s, pick(rng), options.random_phases ? phase(rng) : 0.0);
  }
  return SetupConfig::make(std::move(settings), std::move(net));
}

/// Gaussian complex coefficients d_0..d_n, normalized.
template <class Rng>
std::vector<complex> random_symmetric_target(int n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<complex> d(static_cast<std::size_t>(n) + 1);
  double norm = 0.0;
  for (auto& x : d) {
    x = complex{g(rng), g(rng)};
    norm += std::norm(x);
  }
  norm = std::sqrt(norm);
  for (auto& x : d) x /= norm;
  return d;
}

}  // namespace polent
