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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "polent/config_io.hpp"
#include "polent/random.hpp"

using namespace polent;
using Catch::Matchers::WithinAbs;

TEST_CASE("parse_config reads every field form", "[config]") {
  const auto c = parse_config(R"({
    "n_sources": 2,
    "settings": [[1, 0, 0, 0], {"theta": 1.5707963267948966, "phi": 0.5}],
    "links": [
      {"source": 1, "detector": 1, "phase": 0},
      {"source": 1, "detector": 2, "phase": -1.5707963267948966},
      {"source": 2, "detector": 2, "length": 1.0, "wavenumber": 7853981.634}
    ]
  })");
  CHECK(c.n_sources == 2);
  CHECK_FALSE(c.lossy);
  CHECK(c.settings[0] == PolarizerSetting::sigma_plus());
  CHECK_THAT(std::abs(c.settings[1].beta), WithinAbs(1.0, 1e-15));
  CHECK_THAT(std::arg(c.settings[1].beta), WithinAbs(0.5, 1e-15));
  CHECK(c.network.coupling(0, 0) == complex{1.0, 0.0});
  CHECK(c.network.coupling(0, 1) == complex{0.0, -1.0});
  CHECK_FALSE(c.network.has_link(1, 0));
  CHECK_THAT(std::arg(c.network.coupling(1, 1)), WithinAbs(2.5516516413200503e-05, 1e-12));
  CHECK(validate(c).empty());
}

TEST_CASE("lossy amplitudes", "[config]") {
  const auto c = parse_config(R"({"n_sources": 1, "lossy": true, "settings": [[1,0,0,0]],
                                  "links": [{"source": 1, "detector": 1, "phase": 0, "amplitude": 0.5}]})");
  CHECK(c.lossy);
  CHECK(c.network.coupling(0, 0) == complex{0.5, 0.0});
  CHECK_FALSE(has_errors(validate(c)));
}

TEST_CASE("malformed configs are parse errors", "[config]") {
  const char* bad[] = {
      "not json",
      "[]",
      R"({"settings": [], "links": []})",
      R"({"n_sources": 0, "settings": [], "links": []})",
      R"({"n_sources": 1, "links": []})",
      R"({"n_sources": 1, "settings": [[1,0,0]], "links": []})",
      R"({"n_sources": 1, "settings": [[1,0,0,0]]})",
      R"({"n_sources": 1, "settings": [[1,0,0,0]], "links": [{"source": 2, "detector": 1, "phase": 0}]})",
      R"({"n_sources": 1, "settings": [[1,0,0,0]], "links": [{"source": 1, "detector": 1}]})",
      R"({"n_sources": 1, "settings": [[1,0,0,0]], "links": [{"source": 1, "detector": 1, "phase": 0, "length": 1, "wavenumber": 1}]})",
      R"({"n_sources": 1, "settings": [[1,0,0,0]], "links": [{"source": 1, "detector": 1, "length": 1, "wavenumber": -1}]})",
      R"({"n_sources": 1, "settings": [[1,0,0,0]], "links": [{"source": 1, "detector": 1, "phase": 0}, {"source": 1, "detector": 1, "phase": 1}]})",
      R"({"n_sources": 1, "lossy": "yes", "settings": [[1,0,0,0]], "links": []})",
  };
  for (const char* text : bad) {
    INFO(text);
    CHECK_THROWS_AS(parse_config(text), ParseError);
  }
}

TEST_CASE("settings count mismatch is left to validation", "[config]") {
  const auto c = parse_config(R"({"n_sources": 2, "settings": [[1,0,0,0]],
                                  "links": [{"source": 1, "detector": 1, "phase": 0}, {"source": 2, "detector": 2, "phase": 0}]})");
  const auto v = validate(c);
  REQUIRE_FALSE(v.empty());
  CHECK(v[0].kind == ViolationKind::dimension_mismatch);
}

TEST_CASE("write then read reproduces a config", "[config][property]") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> amp(0.1, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 6;
    auto c = random_config(n, rng);
    if (trial % 4 == 0) {
      c.lossy = true;
      c.network.set_coupling(0, 0, std::polar(amp(rng), 1.0));
    }
    if (trial % 5 == 0) c.network.link(0, n - 1, std::numbers::pi);
    const auto back = parse_config(format_config(c));
    REQUIRE(back.n_sources == c.n_sources);
    REQUIRE(back.lossy == c.lossy);
    for (int s = 0; s < n; ++s) {
      REQUIRE(back.settings[s] == c.settings[s]);
      for (int d = 0; d < n; ++d) REQUIRE(std::abs(back.network.coupling(s, d) - c.network.coupling(s, d)) <= 1e-15);
    }
  }
}
