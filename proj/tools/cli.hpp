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

// Command-line front end. `run` is the whole program minus process setup,
// so tests can drive it with in-memory streams.
//
// Exit codes: 0 ok, 1 unreadable or malformed input, 2 validation failure
// (including exceeded caps), 3 numerical failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polent/polent.hpp"

namespace polent::cli {

enum ExitCode : int {
  kOk = 0,
  kParseFailure = 1,
  kValidationFailure = 2,
  kNumericalFailure = 3,
};

inline constexpr double kDesignSymTolerance = 1e-8;
inline constexpr double kDesignAngmomTolerance = 1e-9;
inline constexpr double kOracleTolerance = 1e-10;

using Json = nlohmann::ordered_json;

// Raised for failures tied to a specific exit code.
struct Failure {
  ExitCode code;
  std::string message;
  Json violations = Json::array();
};

inline std::string fnv1a_digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline Json complex_json(complex z) { return Json::array({z.real(), z.imag()}); }

inline Json complex_list_json(std::span<const complex> zs) {
  Json a = Json::array();
  for (const auto& z : zs) a.push_back(complex_json(z));
  return a;
}

inline Json dump_json(const StateVector& v) {
  Json lines = Json::array();
  std::istringstream in(format_dump(v));
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

inline Json violations_json(std::span<const Violation> vs) {
  Json a = Json::array();
  for (const auto& v : vs) {
    Json j;
    j["kind"] = to_string(v.kind);
    j["severity"] = v.severity == Severity::error ? "error" : "warning";
    if (v.source >= 0) j["source"] = v.source + 1;
    if (v.detector >= 0) j["detector"] = v.detector + 1;
    j["message"] = v.message;
    a.push_back(std::move(j));
  }
  return a;
}

inline Json path_violations_json(std::span<const PathViolation> vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(v.message);
  return a;
}

inline Json dicke_json(const DickeExpansion& e) {
  Json j;
  j["coefficients"] = complex_list_json(e.coefficients);
  j["residual_norm"] = e.residual_norm;
  return j;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kParseFailure, "cannot open '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << contents)) throw Failure{kParseFailure, "cannot write '" + path + "'"};
}

/// Accepts `x`, `yi`, `x+yi`, `x-yi` (also bare `i`, `-i`).
inline complex parse_complex(const std::string& token) {
  static const std::string num = R"((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)";
  static const std::regex real_re("^\\s*([+-]?" + num + ")\\s*$");
  static const std::regex imag_re("^\\s*([+-]?)(" + num + ")?\\s*i\\s*$");
  static const std::regex both_re("^\\s*([+-]?" + num + ")\\s*([+-])\\s*(" + num + ")?\\s*i\\s*$");
  std::smatch m;
  if (std::regex_match(token, m, real_re)) return {std::stod(m[1]), 0.0};
  if (std::regex_match(token, m, imag_re)) {
    const double mag = m[2].matched ? std::stod(m[2]) : 1.0;
    return {0.0, m[1] == "-" ? -mag : mag};
  }
  if (std::regex_match(token, m, both_re)) {
    const double mag = m[3].matched ? std::stod(m[3]) : 1.0;
    return {std::stod(m[1]), m[2] == "-" ? -mag : mag};
  }
  throw ParseError("bad complex number '" + token + "'");
}

inline std::vector<complex> parse_complex_list(const std::string& text) {
  std::vector<complex> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) out.push_back(parse_complex(item));
  if (out.empty()) throw ParseError("empty coefficient list");
  return out;
}

/// Target forms: `dicke:<d_0,...,d_N>`, `path:<literal>` (or any literal
/// containing ';'), `dump:<file>` or a bare dump file name.
inline StateVector parse_target(const std::string& spec) {
  if (spec.rfind("dicke:", 0) == 0) {
    auto d = parse_complex_list(spec.substr(6));
    if (d.size() < 2) throw ParseError("dicke target needs at least two coefficients");
    return dicke_superposition(d);
  }
  if (spec.rfind("path:", 0) == 0 || spec.find(';') != std::string::npos) {
    const auto path = parse_path_literal(spec.rfind("path:", 0) == 0 ? spec.substr(5) : spec);
    if (auto v = validate_path(path); !v.empty()) {
      throw Failure{kValidationFailure, "invalid target path", path_violations_json(v)};
    }
    return reference_state(path);
  }
  const std::string file = spec.rfind("dump:", 0) == 0 ? spec.substr(5) : spec;
  return parse_dump(read_file(file));
}

inline double target_fidelity(const StateVector& state, const StateVector& target) {
  if (state.n_modes() != target.n_modes()) {
    throw Failure{kValidationFailure, "target has " + std::to_string(target.n_modes()) + " modes, state has " +
                                          std::to_string(state.n_modes())};
  }
  if (!(target.squared_norm() > 0.0)) throw Failure{kValidationFailure, "target state is zero"};
  return fidelity(state, target);
}

struct Options {
  std::string config_path;
  std::string target;
  std::string out_path;
  std::string d_text;
  std::string path_literal;
  int n = 0;
  bool lossy = false;
  std::optional<int> cap;
  std::uint64_t seed = 1;
  int trials = 50;
};

// ---------------------------------------------------------------------------

inline int cmd_simulate(const Options& opt, std::ostream& out) {
  const std::string text = read_file(opt.config_path);
  SetupConfig config = parse_config(text);
  if (opt.lossy) config.lossy = true;

  Json report;
  report["command"] = "simulate";
  report["input_digest"] = fnv1a_digest(text + '\0' + opt.target + (opt.lossy ? "\0lossy" : ""));
  report["n"] = config.n_sources;
  const auto findings = validate(config);
  report["violations"] = violations_json(findings);
  if (has_errors(findings)) {
    out << report.dump(2) << '\n';
    return kValidationFailure;
  }
  const int cap = opt.cap.value_or(kDefaultModeCap);
  if (config.n_sources > cap) {
    throw Failure{kValidationFailure, "n_sources exceeds mode cap " + std::to_string(cap)};
  }

  const RawState raw = generate_state(config, cap);
  report["squared_norm"] = raw.squared_norm;
  report["success_weight"] = success_weight(raw, config.n_sources);
  report["destructive_interference"] = raw.destructive_interference;
  if (raw.destructive_interference) {
    report["state"] = Json::array();
    report["dicke"] = nullptr;
    if (!opt.target.empty()) report["fidelity"] = nullptr;
    if (!opt.out_path.empty()) write_file(opt.out_path, "");
    out << report.dump(2) << '\n';
    return kOk;
  }
  const StateVector state = raw.normalized();
  report["state"] = dump_json(state);
  report["dicke"] = dicke_json(decompose(state));
  if (!opt.target.empty()) report["fidelity"] = target_fidelity(state, parse_target(opt.target));
  if (!opt.out_path.empty()) write_file(opt.out_path, format_dump(state));
  out << report.dump(2) << '\n';
  return kOk;
}

inline int cmd_design_sym(const Options& opt, std::ostream& out, std::ostream& err) {
  std::vector<complex> d = parse_complex_list(opt.d_text);
  if (opt.n < 1) throw Failure{kValidationFailure, "--n must be positive"};
  if (d.size() != static_cast<std::size_t>(opt.n) + 1) {
    throw Failure{kValidationFailure, "--d must list n + 1 = " + std::to_string(opt.n + 1) + " coefficients"};
  }
  const int cap = opt.cap.value_or(kDefaultModeCap);
  if (opt.n > cap) throw Failure{kValidationFailure, "--n exceeds mode cap " + std::to_string(cap)};

  Json report;
  report["command"] = "design-sym";
  report["input_digest"] = fnv1a_digest(std::to_string(opt.n) + '\0' + opt.d_text);
  report["n"] = opt.n;
  Json warnings = Json::array();

  double norm2 = 0.0;
  for (const auto& x : d) norm2 += std::norm(x);
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) throw Failure{kValidationFailure, "target coefficients are all zero"};
  if (std::abs(norm2 - 1.0) > 1e-12) {
    const std::string w = "target not normalized (|d|^2 = " + format_double(norm2) + "); rescaled";
    warnings.push_back(w);
    err << "warning: " << w << '\n';
    for (auto& x : d) x /= std::sqrt(norm2);
  }
  report["warnings"] = warnings;
  report["target"] = complex_list_json(d);

  const DesignPolynomial poly = build_polynomial(d);
  const auto roots = find_roots(poly);
  const SetupConfig config = SetupConfig::make(settings_from_roots(roots, opt.n), FiberNetwork::fully_connected(opt.n));
  const RawState raw = generate_state(config, cap);
  if (raw.destructive_interference) throw Failure{kNumericalFailure, "designed setup produced no output"};
  const StateVector state = raw.normalized();
  const double f = fidelity(state, dicke_superposition(d));

  Json poly_json;
  poly_json["degree"] = poly.degree;
  poly_json["coefficients"] = complex_list_json(poly.coefficients);
  report["polynomial"] = poly_json;
  report["roots"] = complex_list_json(roots);
  report["config"] = config_to_json(config);
  report["state"] = dump_json(state);
  report["success_weight"] = success_weight(raw, opt.n);
  report["fidelity"] = f;
  if (!opt.out_path.empty()) write_file(opt.out_path, format_config(config));
  out << report.dump(2) << '\n';
  return f >= 1.0 - kDesignSymTolerance ? kOk : kNumericalFailure;
}

inline int cmd_design_angmom(const Options& opt, std::ostream& out) {
  const CouplingPath path = parse_path_literal(opt.path_literal);
  Json report;
  report["command"] = "design-angmom";
  report["input_digest"] = fnv1a_digest(opt.path_literal);
  report["path"] = opt.path_literal;
  const auto violations = validate_path(path);
  report["violations"] = path_violations_json(violations);
  if (!violations.empty()) {
    out << report.dump(2) << '\n';
    return kValidationFailure;
  }
  const int cap = opt.cap.value_or(kDefaultModeCap);
  if (path.n() > cap) throw Failure{kValidationFailure, "path length exceeds mode cap " + std::to_string(cap)};

  const SetupConfig config = compile_protocol(path);
  const RawState raw = generate_state(config, cap);
  if (raw.destructive_interference) throw Failure{kNumericalFailure, "compiled setup produced no output"};
  const StateVector state = raw.normalized();
  const StateVector reference = reference_state(path);
  const double f = fidelity(state, reference);

  report["n"] = path.n();
  report["config"] = config_to_json(config);
  report["state"] = dump_json(state);
  report["reference"] = dump_json(reference);
  report["success_weight"] = success_weight(raw, path.n());
  report["fidelity"] = f;
  if (!opt.out_path.empty()) write_file(opt.out_path, format_config(config));
  out << report.dump(2) << '\n';
  return f >= 1.0 - kDesignAngmomTolerance ? kOk : kNumericalFailure;
}

inline int cmd_decompose(const Options& opt, std::ostream& out) {
  if (opt.target.empty() == opt.config_path.empty()) {
    throw Failure{kParseFailure, "decompose needs exactly one of --target or --config"};
  }
  Json report;
  report["command"] = "decompose";
  StateVector state(1);
  if (!opt.target.empty()) {
    report["input_digest"] = fnv1a_digest(opt.target);
    state = parse_target(opt.target);
  } else {
    const std::string text = read_file(opt.config_path);
    report["input_digest"] = fnv1a_digest(text);
    SetupConfig config = parse_config(text);
    if (opt.lossy) config.lossy = true;
    if (auto f = validate(config); has_errors(f)) {
      throw Failure{kValidationFailure, "invalid config", violations_json(f)};
    }
    const RawState raw = generate_state(config, opt.cap.value_or(kDefaultModeCap));
    if (raw.destructive_interference) throw Failure{kNumericalFailure, "setup output vanishes"};
    state = raw.amplitudes;
  }
  if (!(state.squared_norm() > 0.0)) throw Failure{kNumericalFailure, "state is zero"};
  state = normalize(state);
  report["n"] = state.n_modes();
  report["state"] = dump_json(state);
  report["dicke"] = dicke_json(decompose(state));
  out << report.dump(2) << '\n';
  return kOk;
}

inline double max_deviation(const RawState& a, const RawState& b) {
  double dev = 0.0;
  for (std::size_t i = 0; i < a.amplitudes.dimension(); ++i) {
    dev = std::max(dev, std::abs(a.amplitudes[i] - b.amplitudes[i]));
  }
  return dev;
}

inline int cmd_oracle_check(const Options& opt, std::ostream& out) {
  const int cap = opt.cap.value_or(kDefaultOracleCap);
  Json report;
  report["command"] = "oracle-check";
  std::vector<SetupConfig> configs;
  if (!opt.config_path.empty()) {
    const std::string text = read_file(opt.config_path);
    report["input_digest"] = fnv1a_digest(text);
    SetupConfig config = parse_config(text);
    if (opt.lossy) config.lossy = true;
    if (auto f = validate(config); has_errors(f)) {
      throw Failure{kValidationFailure, "invalid config", violations_json(f)};
    }
    configs.push_back(std::move(config));
  } else {
    if (opt.trials < 1) throw Failure{kValidationFailure, "--trials must be positive"};
    report["input_digest"] = fnv1a_digest(std::to_string(opt.seed) + '\0' + std::to_string(opt.trials));
    report["seed"] = opt.seed;
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<int> size(2, 5);
    for (int t = 0; t < opt.trials; ++t) configs.push_back(random_config(size(rng), rng));
  }
  report["trials"] = configs.size();

  double worst = 0.0;
  for (const auto& config : configs) {
    if (config.n_sources > cap) {
      throw Failure{kValidationFailure, "n_sources " + std::to_string(config.n_sources) + " exceeds oracle cap " +
                                            std::to_string(cap)};
    }
    worst = std::max(worst, max_deviation(generate_state(config, std::max(cap, kDefaultModeCap)),
                                          permutation_oracle(config, cap)));
  }
  const bool passed = worst <= kOracleTolerance;
  report["max_deviation"] = worst;
  report["tolerance"] = kOracleTolerance;
  report["passed"] = passed;
  out << report.dump(2) << '\n';
  return passed ? kOk : kNumericalFailure;
}

// ---------------------------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Polarization-entanglement source simulator and designer", "polent"};
  app.require_subcommand(1);
  Options opt;
  int cap_value = 0;

  auto* simulate = app.add_subcommand("simulate", "Simulate the post-selected state of a setup file");
  simulate->add_option("--config", opt.config_path, "Setup file (JSON)")->required();
  simulate->add_option("--target", opt.target, "Target state: dicke:<d..>, path:<literal>, or dump file");
  simulate->add_option("--out", opt.out_path, "Write the normalized state dump here");
  simulate->add_flag("--lossy", opt.lossy, "Allow non-unimodular couplings");
  auto* sim_cap = simulate->add_option("--cap", cap_value, "Mode cap");

  auto* design_sym = app.add_subcommand("design-sym", "Design a setup for a symmetric target");
  design_sym->add_option("--n", opt.n, "Number of photons")->required();
  design_sym->add_option("--d", opt.d_text, "Dicke coefficients d_0,...,d_N")->required();
  design_sym->add_option("--out", opt.out_path, "Write the designed setup file here");
  auto* sym_cap = design_sym->add_option("--cap", cap_value, "Mode cap");

  auto* design_am = app.add_subcommand("design-angmom", "Compile a coupling path into a setup");
  design_am->add_option("path", opt.path_literal, "Coupling path, e.g. 1/2,1,1/2;m=+1/2")->required();
  design_am->add_option("--out", opt.out_path, "Write the compiled setup file here");
  auto* am_cap = design_am->add_option("--cap", cap_value, "Mode cap");

  auto* decompose_cmd = app.add_subcommand("decompose", "Dicke decomposition of a state or setup output");
  decompose_cmd->add_option("--target", opt.target, "State: dicke:<d..>, path:<literal>, or dump file");
  decompose_cmd->add_option("--config", opt.config_path, "Setup file whose output is decomposed");
  decompose_cmd->add_flag("--lossy", opt.lossy, "Allow non-unimodular couplings");
  auto* dec_cap = decompose_cmd->add_option("--cap", cap_value, "Mode cap");

  auto* oracle = app.add_subcommand("oracle-check", "Cross-check the engine against the permutation expansion");
  oracle->add_option("--config", opt.config_path, "Check this setup only");
  oracle->add_option("--seed", opt.seed, "Seed for random setups");
  oracle->add_option("--trials", opt.trials, "Number of random setups");
  oracle->add_flag("--lossy", opt.lossy, "Allow non-unimodular couplings");
  auto* or_cap = oracle->add_option("--cap", cap_value, "Oracle cap");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseFailure;
  }
  for (auto* c : {sim_cap, sym_cap, am_cap, dec_cap, or_cap}) {
    if (c->count() > 0) opt.cap = cap_value;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(opt, out);
    if (design_sym->parsed()) return cmd_design_sym(opt, out, err);
    if (design_am->parsed()) return cmd_design_angmom(opt, out);
    if (decompose_cmd->parsed()) return cmd_decompose(opt, out);
    if (oracle->parsed()) return cmd_oracle_check(opt, out);
  } catch (const Failure& f) {
    err << "error: " << f.message << '\n';
    for (const auto& v : f.violations) err << "  " << v.dump() << '\n';
    return f.code;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseFailure;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << '\n';
    return kParseFailure;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const PathError& e) {
    err << "validation error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::invalid_argument& e) {
    err << "validation error: " << e.what() << '\n';
    return kValidationFailure;
  }
  return kParseFailure;
}

}  // namespace polent::cli
