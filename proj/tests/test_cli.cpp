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
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

using namespace polent;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  nlohmann::json report() const { return nlohmann::json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "polent_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_temp(const std::string& name, const std::string& contents) {
  const auto p = scratch_dir() / name;
  std::ofstream(p) << contents;
  return p.string();
}

std::string read_back(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kDickeConfig = R"({
  "n_sources": 2,
  "settings": [[1, 0, 0, 0], [0, 0, 1, 0]],
  "links": [
    {"source": 1, "detector": 1, "phase": 0}, {"source": 1, "detector": 2, "phase": 0},
    {"source": 2, "detector": 1, "phase": 0}, {"source": 2, "detector": 2, "phase": 0}
  ]
})";

}  // namespace

TEST_CASE("simulate", "[cli]") {
  SECTION("N=2 Dicke config") {
    const auto cfg = write_temp("dicke.json", kDickeConfig);
    const auto dump = (scratch_dir() / "dicke.dump").string();
    const auto r = run({"simulate", "--config", cfg, "--target", "dicke:0,1,0", "--out", dump});
    REQUIRE(r.code == 0);
    const auto rep = r.report();
    CHECK(rep["state"].size() == 2);
    CHECK(rep["state"][0] == "10 0.70710678118654746 0");
    CHECK(rep["state"][1] == "01 0.70710678118654746 0");
    CHECK(rep["success_weight"].get<double>() == 0.5);
    CHECK_THAT(rep["fidelity"].get<double>(), WithinAbs(1.0, 1e-15));
    CHECK(rep["dicke"]["residual_norm"].get<double>() <= 1e-15);
    CHECK(read_back(dump) == "10 0.70710678118654746 0\n01 0.70710678118654746 0\n");

    // The dumped state can serve as a target again.
    const auto again = run({"simulate", "--config", cfg, "--target", dump});
    REQUIRE(again.code == 0);
    CHECK_THAT(again.report()["fidelity"].get<double>(), WithinAbs(1.0, 1e-15));
  }

  SECTION("zero-norm output") {
    const auto cfg = write_temp("dark.json", R"({"n_sources": 2, "settings": [[1,0,0,0],[1,0,0,0]],
      "links": [{"source":1,"detector":1,"phase":0},{"source":1,"detector":2,"phase":0},
                {"source":2,"detector":1,"phase":0},{"source":2,"detector":2,"phase":3.141592653589793}]})");
    const auto r = run({"simulate", "--config", cfg});
    REQUIRE(r.code == 0);
    CHECK(r.report()["destructive_interference"] == true);
    CHECK(r.report()["state"].empty());
  }

  SECTION("error exit codes") {
    CHECK(run({"simulate", "--config", write_temp("bad.json", "{ nope")}).code == cli::kParseFailure);
    const auto missing = run({"simulate", "--config", (scratch_dir() / "does_not_exist.json").string()});
    CHECK(missing.code == cli::kParseFailure);
    CHECK_THAT(missing.err, ContainsSubstring("cannot open"));
    const auto invalid = run({"simulate", "--config", write_temp("unnorm.json", R"({"n_sources": 1,
      "settings": [[0.5,0,0.5,0]], "links": [{"source":1,"detector":1,"phase":0}]})")});
    CHECK(invalid.code == cli::kValidationFailure);
    CHECK(invalid.report()["violations"][0]["kind"] == "normalization");
    CHECK(run({"simulate"}).code == cli::kParseFailure);
    CHECK(run({"simulate", "--config", write_temp("d2.json", kDickeConfig), "--target", "dicke:1,0,0,0"}).code ==
          cli::kValidationFailure);
  }

  SECTION("--lossy relaxes unit-modulus couplings") {
    const auto cfg = write_temp("lossy.json", R"({"n_sources": 1, "settings": [[1,0,0,0]],
      "links": [{"source":1,"detector":1,"phase":0,"amplitude":0.5}]})");
    CHECK(run({"simulate", "--config", cfg}).code == cli::kValidationFailure);
    const auto r = run({"simulate", "--config", cfg, "--lossy"});
    REQUIRE(r.code == 0);
    CHECK(r.report()["violations"][0]["severity"] == "warning");
    CHECK(r.report()["success_weight"].get<double>() == 0.25);
  }
}

TEST_CASE("design-sym", "[cli]") {
  SECTION("GHZ_3") {
    const auto out = (scratch_dir() / "ghz3.json").string();
    const auto r = run({"design-sym", "--n", "3", "--d", "0.7071,0,0,0.7071", "--out", out});
    REQUIRE(r.code == 0);
    const auto rep = r.report();
    CHECK(rep["fidelity"].get<double>() >= 1.0 - 1e-8);
    CHECK(rep["warnings"].size() == 1);  // 0.7071 is not exactly 1/sqrt2
    const auto sim = run({"simulate", "--config", out, "--target", "dicke:1,0,0,1"});
    REQUIRE(sim.code == 0);
    CHECK(sim.report()["fidelity"].get<double>() >= 1.0 - 1e-8);
  }
  SECTION("W_4") {
    const auto r = run({"design-sym", "--n", "4", "--d", "0,1,0,0,0"});
    REQUIRE(r.code == 0);
    const auto settings = r.report()["config"]["settings"];
    CHECK(settings[0] == nlohmann::json::array({0.0, 0.0, 1.0, 0.0}));
    for (int i = 1; i < 4; ++i) CHECK(settings[i] == nlohmann::json::array({1.0, 0.0, 0.0, 0.0}));
    CHECK(r.report()["warnings"].empty());
  }
  SECTION("complex coefficients and auto-normalization") {
    const auto r = run({"design-sym", "--n", "2", "--d", "1,0.5-2i,i"});
    REQUIRE(r.code == 0);
    CHECK(r.report()["warnings"].size() == 1);
    CHECK_THAT(r.err, ContainsSubstring("warning"));
    CHECK(r.report()["fidelity"].get<double>() >= 1.0 - 1e-8);
  }
  SECTION("errors") {
    CHECK(run({"design-sym", "--n", "2", "--d", "0,0,0"}).code == cli::kValidationFailure);
    CHECK(run({"design-sym", "--n", "2", "--d", "1,0"}).code == cli::kValidationFailure);
    CHECK(run({"design-sym", "--n", "2", "--d", "1,zero,0"}).code == cli::kParseFailure);
  }
}

TEST_CASE("design-angmom", "[cli]") {
  SECTION("singlet") {
    const auto r = run({"design-angmom", "1/2,0;m=0"});
    REQUIRE(r.code == 0);
    const auto rep = r.report();
    CHECK_THAT(rep["fidelity"].get<double>(), WithinAbs(1.0, 1e-15));
    int pi_links = 0;
    for (const auto& link : rep["config"]["links"]) {
      if (std::abs(link["phase"].get<double>() - 3.141592653589793) < 1e-15) ++pi_links;
    }
    CHECK(pi_links == 1);
  }
  SECTION("maximal path is fully connected") {
    const auto r = run({"design-angmom", "1/2,1,3/2,2;m=0"});
    REQUIRE(r.code == 0);
    CHECK(r.report()["config"]["links"].size() == 16);
    for (const auto& link : r.report()["config"]["links"]) CHECK(link["phase"].get<double>() == 0.0);
  }
  SECTION("invalid step") {
    const auto r = run({"design-angmom", "1/2,3/2;m=1/2"});
    CHECK(r.code == cli::kValidationFailure);
    CHECK_FALSE(r.report()["violations"].empty());
  }
  SECTION("bad literal") { CHECK(run({"design-angmom", "1/2,1"}).code == cli::kParseFailure); }
}

TEST_CASE("decompose", "[cli]") {
  const auto r = run({"decompose", "--target", "path:1/2,0;m=0"});
  REQUIRE(r.code == 0);
  CHECK_THAT(r.report()["dicke"]["residual_norm"].get<double>(), WithinAbs(1.0, 1e-15));
  const auto c = run({"decompose", "--config", write_temp("dec.json", kDickeConfig)});
  REQUIRE(c.code == 0);
  CHECK_THAT(c.report()["dicke"]["coefficients"][1][0].get<double>(), WithinAbs(1.0, 1e-15));
  CHECK(run({"decompose"}).code == cli::kParseFailure);
}

TEST_CASE("oracle-check", "[cli]") {
  SECTION("fixed config") {
    const auto r = run({"oracle-check", "--config", write_temp("oc.json", kDickeConfig)});
    REQUIRE(r.code == 0);
    CHECK(r.report()["max_deviation"].get<double>() <= 1e-10);
  }
  SECTION("random configs") {
    const auto r = run({"oracle-check", "--trials", "50", "--seed", "7"});
    REQUIRE(r.code == 0);
    CHECK(r.report()["trials"] == 50);
    CHECK(r.report()["passed"] == true);
  }
  SECTION("cap") {
    std::string cfg = R"({"n_sources": 9, "settings": [)";
    for (int i = 0; i < 9; ++i) cfg += std::string(i ? "," : "") + "[1,0,0,0]";
    cfg += R"(], "links": [)";
    for (int i = 1; i <= 9; ++i) {
      cfg += std::string(i > 1 ? "," : "") + R"({"source":)" + std::to_string(i) + R"(,"detector":)" +
             std::to_string(i) + R"(,"phase":0})";
    }
    cfg += "]}";
    const auto path = write_temp("n9.json", cfg);
    const auto r = run({"oracle-check", "--config", path});
    CHECK(r.code == cli::kValidationFailure);
    CHECK_THAT(r.err, ContainsSubstring("oracle cap"));
    CHECK(run({"oracle-check", "--config", path, "--cap", "9"}).code == 0);
  }
}

TEST_CASE("reports are deterministic", "[cli]") {
  const auto a = run({"oracle-check", "--trials", "20", "--seed", "3"});
  const auto b = run({"oracle-check", "--trials", "20", "--seed", "3"});
  CHECK(a.out == b.out);
  const auto c = run({"design-sym", "--n", "4", "--d", "0.3,0.1i,0.5,-0.2,0.7"});
  const auto d = run({"design-sym", "--n", "4", "--d", "0.3,0.1i,0.5,-0.2,0.7"});
  CHECK(c.out == d.out);
  CHECK(c.report()["input_digest"] != run({"design-sym", "--n", "4", "--d", "0.3,0.1i,0.5,-0.2,0.8"}).report()["input_digest"]);
}

TEST_CASE("complex literal parsing", "[cli]") {
  CHECK(cli::parse_complex("1.5") == complex{1.5, 0.0});
  CHECK(cli::parse_complex("-i") == complex{0.0, -1.0});
  CHECK(cli::parse_complex("2.5e-1i") == complex{0.0, 0.25});
  CHECK(cli::parse_complex("1-2i") == complex{1.0, -2.0});
  CHECK(cli::parse_complex(" 3 + i ") == complex{3.0, 1.0});
  CHECK_THROWS_AS(cli::parse_complex("1+"), ParseError);
  CHECK_THROWS_AS(cli::parse_complex(""), ParseError);
}
