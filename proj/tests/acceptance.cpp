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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Tolerances and time budgets are fixed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "polent/polent.hpp"

using namespace polent;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

struct Criterion {
  const char* id;
  const char* title;
  double budget_seconds;  // <= 0: no runtime requirement
  std::function<Outcome()> body;
};

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

SetupConfig dicke_config(int n, int k) {
  std::vector<PolarizerSetting> s;
  for (int i = 0; i < n; ++i) s.push_back(i < k ? PolarizerSetting::sigma_minus() : PolarizerSetting::sigma_plus());
  return SetupConfig::make(std::move(s), FiberNetwork::fully_connected(n));
}

Outcome dicke_generation() {
  double worst = 1.0;
  for (int n = 2; n <= 6; ++n) {
    for (int k = 0; k <= n; ++k) {
      worst = std::min(worst, fidelity(generate_state(dicke_config(n, k)).amplitudes, dicke_state(n, k)));
    }
  }
  return {worst >= 1.0 - 1e-10, fmt("min fidelity %.16f over N=2..6, all K", worst)};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> size(2, 5);
  double worst = 0.0;
  int removed = 0, total = 0;
  for (int t = 0; t < 200; ++t) {
    const auto c = random_config(size(rng), rng, {.random_phases = true, .removal_probability = 0.2});
    for (const auto& x : c.network.couplings()) {
      ++total;
      removed += x == complex{0.0, 0.0};
    }
    worst = std::max(worst, oracle::max_abs_diff(generate_state(c).amplitudes, permutation_oracle(c).amplitudes));
  }
  return {worst <= 1e-10, fmt("max amplitude deviation %.3e over 200 configs (%.1f%% fibers removed)", worst,
                              100.0 * removed / total)};
}

Outcome symmetric_round_trip() {
  std::mt19937_64 rng(77);
  double worst = 1.0;
  for (int n = 2; n <= 6; ++n) {
    for (int t = 0; t < 100; ++t) {
      const auto d = random_symmetric_target(n, rng);
      const auto raw = generate_state(design_symmetric(d, n));
      worst = std::min(worst, fidelity(raw.amplitudes, dicke_superposition(d)));
    }
  }
  return {worst >= 1.0 - 1e-8, fmt("min fidelity %.16f over 500 targets", worst)};
}

Outcome canonical_states() {
  double worst = 1.0;
  const double h = 1.0 / std::sqrt(2.0);
  for (int n = 2; n <= 4; ++n) {
    std::vector<complex> ghz(n + 1, 0.0), w(n + 1, 0.0);
    ghz[0] = ghz[n] = h;
    w[1] = 1.0;
    for (const auto& d : {ghz, w}) {
      worst = std::min(worst, fidelity(generate_state(design_symmetric(d, n)).amplitudes, dicke_superposition(d)));
    }
  }
  const std::vector<complex> ghz2{h, 0.0, h};
  const auto c = design_symmetric(ghz2, 2);
  const complex r0 = c.settings[0].alpha / c.settings[0].beta;
  const complex r1 = c.settings[1].alpha / c.settings[1].beta;
  const complex i{0.0, 1.0};
  const double ratio_err = std::min(std::abs(r0 - i) + std::abs(r1 + i), std::abs(r0 + i) + std::abs(r1 - i));
  return {worst >= 1.0 - 1e-9 && ratio_err <= 1e-12,
          fmt("min fidelity %.16f; GHZ_2 ratio error vs {+i,-i} %.3e", worst, ratio_err)};
}

Outcome angmom_protocol() {
  double worst = 1.0;
  int states = 0;
  for (int n = 2; n <= 4; ++n) {
    for (const auto& b : angmom_basis(n)) {
      const auto raw = generate_state(compile_protocol(b.path));
      worst = std::min(worst, raw.destructive_interference ? 0.0 : fidelity(raw.amplitudes, b.state));
      ++states;
    }
  }
  const CouplingPath singlet{{1, 0}, 0};
  const auto v = generate_state(compile_protocol(singlet)).normalized();
  const double antisym = oracle::max_abs_diff(swap_modes(v, 0, 1), -1.0 * v);
  return {states == 28 && worst >= 1.0 - 1e-9 && antisym <= 1e-12,
          fmt("%.0f states, min fidelity %.16f", states, worst) + fmt("; singlet antisymmetry error %.3e", antisym)};
}

Outcome basis_completeness() {
  const auto basis = angmom_basis(4);
  double worst = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const complex ip = inner_product(basis[i].state, basis[j].state);
      worst = std::max(worst, std::abs(ip - complex{i == j ? 1.0 : 0.0, 0.0}));
    }
  }
  return {basis.size() == 16 && worst <= 1e-10,
          fmt("%.0f states, max |G - I| %.3e", static_cast<double>(basis.size()), worst)};
}

Outcome success_weights() {
  double worst = 0.0;
  for (int n = 1; n <= 6; ++n) {
    for (int k = 0; k <= n; ++k) {
      const double expected =
          oracle::factorial(n) * oracle::factorial(k) * oracle::factorial(n - k) / std::pow(double(n), n);
      worst = std::max(worst, std::abs(success_weight(generate_state(dicke_config(n, k)), n) - expected));
    }
  }
  const double w21 = success_weight(generate_state(dicke_config(2, 1)), 2);
  return {worst <= 1e-12 && w21 == 0.5, fmt("max deviation %.3e; N=2,K=1 weight %.17g", worst, w21)};
}

Outcome symmetry_law() {
  std::mt19937_64 rng(606);
  std::uniform_int_distribution<int> size(2, 6);
  double worst_residual = 0.0, worst_fid = 1.0;
  for (int t = 0; t < 100; ++t) {
    const auto c = random_config(size(rng), rng, {.random_phases = false, .removal_probability = 0.0});
    const auto v = generate_state(c).normalized();
    worst_residual = std::max(worst_residual, decompose(v).residual_norm);
    worst_fid = std::min(worst_fid, fidelity(v, dicke_superposition(dicke_coefficients(c.settings))));
  }
  return {worst_residual <= 1e-10 && worst_fid >= 1.0 - 1e-10,
          fmt("max residual %.3e, min fidelity %.16f", worst_residual, worst_fid)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"AC1", "Dicke generation", 1.0, dicke_generation},
      {"AC2", "Oracle equivalence", 5.0, oracle_equivalence},
      {"AC3", "Symmetric design round trip", 10.0, symmetric_round_trip},
      {"AC4", "Canonical GHZ/W states", 0.0, canonical_states},
      {"AC5", "Angular-momentum protocol", 5.0, angmom_protocol},
      {"AC6", "Basis completeness", 0.0, basis_completeness},
      {"AC7", "Success weight", 0.0, success_weights},
      {"AC8", "Symmetry law", 0.0, symmetry_law},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.budget_seconds <= 0.0 || secs < c.budget_seconds;
    const bool ok = o.passed && in_time;
    failures += !ok;
    std::string timing = fmt("%.3f s", secs);
    if (c.budget_seconds > 0.0) timing += fmt(" (budget %.0f s)", c.budget_seconds);
    std::printf("[%s] %s %s: %s; %s\n", ok ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(), timing.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
