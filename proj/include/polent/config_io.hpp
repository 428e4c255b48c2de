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

// JSON setup files.
//
//   {
//     "n_sources": 2,
//     "lossy": false,
//     "settings": [[1, 0, 0, 0], {"theta": 1.5707963267948966, "phi": 0}],
//     "links": [
//       {"source": 1, "detector": 1, "phase": 0},
//       {"source": 2, "detector": 2, "length": 1.0, "wavenumber": 7853981.634}
//     ]
//   }
//
// Settings are [alpha_re, alpha_im, beta_re, beta_im] or wave-plate angles.
// Indices are 1-based. A missing link is a removed fiber. Lossy configs may
// give an "amplitude" next to the phase.

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include <json.hpp>

#include "polent/errors.hpp"
#include "polent/setup.hpp"

namespace polent {

namespace detail {

using nlohmann::json;

inline double number_field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing \"" + key + "\"");
  if (!it->is_number()) throw ParseError(where + ": \"" + key + "\" must be a number");
  return it->get<double>();
}

inline int index_field(const json& obj, const char* key, int n, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing \"" + key + "\"");
  if (!it->is_number_integer()) throw ParseError(where + ": \"" + key + "\" must be an integer");
  const auto v = it->get<long long>();
  if (v < 1 || v > n) {
    throw ParseError(where + ": \"" + key + "\" = " + std::to_string(v) + " outside 1.." + std::to_string(n));
  }
  return static_cast<int>(v) - 1;
}

inline PolarizerSetting parse_setting(const json& j, const std::string& where) {
  if (j.is_array()) {
    if (j.size() != 4) throw ParseError(where + ": expected [alpha_re, alpha_im, beta_re, beta_im]");
    for (const auto& x : j) {
      if (!x.is_number()) throw ParseError(where + ": setting components must be numbers");
    }
    return {complex{j[0].get<double>(), j[1].get<double>()}, complex{j[2].get<double>(), j[3].get<double>()}};
  }
  if (j.is_object()) {
    return PolarizerSetting::from_angles(number_field(j, "theta", where), number_field(j, "phi", where));
  }
  throw ParseError(where + ": setting must be an array or {theta, phi}");
}

}  // namespace detail

inline SetupConfig parse_config(const std::string& text) {
  using detail::json;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("config: top level must be an object");

  auto n_it = root.find("n_sources");
  if (n_it == root.end() || !n_it->is_number_integer()) throw ParseError("config: \"n_sources\" must be an integer");
  const long long n_raw = n_it->get<long long>();
  if (n_raw < 1 || n_raw > kMaxRepresentableModes) {
    throw ParseError("config: \"n_sources\" must lie in 1..30");
  }
  const int n = static_cast<int>(n_raw);

  SetupConfig config;
  config.n_sources = n;
  if (auto it = root.find("lossy"); it != root.end()) {
    if (!it->is_boolean()) throw ParseError("config: \"lossy\" must be a boolean");
    config.lossy = it->get<bool>();
  }

  auto s_it = root.find("settings");
  if (s_it == root.end() || !s_it->is_array()) throw ParseError("config: \"settings\" must be an array");
  for (std::size_t i = 0; i < s_it->size(); ++i) {
    config.settings.push_back(detail::parse_setting((*s_it)[i], "settings[" + std::to_string(i) + "]"));
  }

  config.network = FiberNetwork(n);
  auto l_it = root.find("links");
  if (l_it == root.end() || !l_it->is_array()) throw ParseError("config: \"links\" must be an array");
  std::set<std::pair<int, int>> seen;
  for (std::size_t i = 0; i < l_it->size(); ++i) {
    const auto& link = (*l_it)[i];
    const std::string where = "links[" + std::to_string(i) + "]";
    if (!link.is_object()) throw ParseError(where + ": must be an object");
    const int s = detail::index_field(link, "source", n, where);
    const int d = detail::index_field(link, "detector", n, where);
    if (!seen.emplace(s, d).second) throw ParseError(where + ": duplicate link");

    const bool has_phase = link.contains("phase");
    const bool has_length = link.contains("length") || link.contains("wavenumber");
    if (has_phase == has_length) throw ParseError(where + ": give exactly one of \"phase\" or \"length\"+\"wavenumber\"");
    double phase = 0.0;
    try {
      phase = has_phase ? reduce_phase(detail::number_field(link, "phase", where))
                        : phase_from_length(detail::number_field(link, "wavenumber", where),
                                            detail::number_field(link, "length", where));
    } catch (const std::invalid_argument& e) {
      throw ParseError(where + ": " + e.what());
    }
    complex t = FiberNetwork::unit_phasor(phase);
    if (link.contains("amplitude")) t *= detail::number_field(link, "amplitude", where);
    config.network.set_coupling(s, d, t);
  }
  return config;
}

inline SetupConfig read_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

inline nlohmann::ordered_json config_to_json(const SetupConfig& config) {
  using nlohmann::ordered_json;
  ordered_json root;
  root["n_sources"] = config.n_sources;
  root["lossy"] = config.lossy;
  ordered_json settings = ordered_json::array();
  for (const auto& e : config.settings) {
    settings.push_back({e.alpha.real(), e.alpha.imag(), e.beta.real(), e.beta.imag()});
  }
  root["settings"] = std::move(settings);
  ordered_json links = ordered_json::array();
  const int m = config.network.size();
  for (int s = 0; s < m; ++s) {
    for (int d = 0; d < m; ++d) {
      const complex t = config.network.coupling(s, d);
      if (t == complex{0.0, 0.0}) continue;
      ordered_json link;
      link["source"] = s + 1;
      link["detector"] = d + 1;
      link["phase"] = reduce_phase(std::arg(t));
      if (std::abs(std::abs(t) - 1.0) > 1e-15) link["amplitude"] = std::abs(t);
      links.push_back(std::move(link));
    }
  }
  root["links"] = std::move(links);
  return root;
}

inline std::string format_config(const SetupConfig& config) { return config_to_json(config).dump(2) + "\n"; }

}  // namespace polent
