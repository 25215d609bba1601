// Copyright 2026 The qfock Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "qfock/errors.hpp"
#include "qfock/runner.hpp"

using namespace qfock;

namespace {

const char* kMixedConfig = R"(
# two-letter mixed model
kind      mixed
command   moments
d         2
N         6
seed      9
Q {
  row  0.0   0.5
  row  0.5   0.3
}
max_order 6
tolerance moments 1e-9
)";

const char* kAWConfig = R"(
kind    araki-woods
command aw-inner
q       0.5
N       4
seed    4
blocks {
  invariant
  pair 4.0
}
trials 25
)";

}  // namespace

TEST_CASE("config round trip") {
  const RunConfig config = parse_config_text(kMixedConfig);
  CHECK(config.kind == RunConfig::Kind::mixed);
  CHECK(config.d == 2);
  CHECK(config.N == 6);
  CHECK(config.seed == 9);
  CHECK(config.q_entries(0, 1) == 0.5);
  CHECK(config.q_entries(1, 1) == 0.3);
  CHECK(config.param_int("max_order", 0) == 6);
  CHECK(config.tolerance("moments", 0.0) == 1e-9);
  CHECK(config.command == "moments");
}

TEST_CASE("malformed configs name the offending field") {
  CHECK_THROWS_WITH_AS(parse_config_text("kind mixed\nN 4\nQ {\n row 0.1 0.2\n row 0.3 0.4\n}\ncommand gram\n"),
                       doctest::Contains("not symmetric at entry pair (1,0)"), UsageError);
  CHECK_THROWS_WITH_AS(parse_config_text("kind nonsense\nN 3\n"), doctest::Contains("kind"),
                       UsageError);
  CHECK_THROWS_WITH_AS(parse_config_text("kind mixed\nN 3\nbogus_key 4\nQ {\n row 0.0\n}\n"),
                       doctest::Contains("bogus_key"), UsageError);
  CHECK_THROWS_WITH_AS(parse_config_text("kind mixed\nQ {\n row 0.0\n}\n"),
                       doctest::Contains("'N'"), UsageError);
  CHECK_THROWS_WITH_AS(parse_config_text("kind mixed\nN 2\nQ {\n row 0.5 0.5\n}\n"),
                       doctest::Contains("expected 1"), UsageError);
  CHECK_THROWS_AS(parse_config_text("kind araki-woods\nN 3\nq 1.5\nblocks {\n invariant\n}\n"),
                  UsageError);
}

TEST_CASE("moments command passes and echoes the configuration") {
  RunConfig config = parse_config_text(kMixedConfig);
  const Report report = run(config);
  CHECK(report.overall_pass());
  const nlohmann::json j = report.to_json();
  CHECK(j["command"] == "moments");
  CHECK(j["overall_pass"] == true);
  CHECK(j["config"]["seed"] == 9);
  CHECK(j["config"]["Q"][0][1] == 0.5);
  CHECK(j["checks"].is_array());
  CHECK(j["checks"].size() > 0);
  for (const auto& check : j["checks"]) {
    CHECK(check.contains("name"));
    CHECK(check["lhs"].is_number());
    CHECK(check["rhs"].is_number());
    CHECK(check["tolerance"].is_number());
    CHECK(check["pass"].is_boolean());
  }
}

TEST_CASE("determinism: identical config and seed give identical check values") {
  RunConfig config = parse_config_text(kMixedConfig);
  config.command = "trace-check";
  config.params["trials"] = "10";
  const Report a = run(config);
  const Report b = run(config);
  REQUIRE(a.checks().size() == b.checks().size());
  for (std::size_t k = 0; k < a.checks().size(); ++k) {
    CHECK(a.checks()[k].lhs == b.checks()[k].lhs);
    CHECK(a.checks()[k].rhs == b.checks()[k].rhs);
  }
}

TEST_CASE("every command on its matching fixture kind passes") {
  for (const char* command :
       {"gram", "ops", "commutator-decay", "moments", "trace-check", "wick", "commutant"}) {
    RunConfig config = parse_config_text(kMixedConfig);
    config.command = command;
    config.N = 8;
    config.params["trials"] = "10";
    const Report report = run(config);
    CAPTURE(command);
    CHECK(report.overall_pass());
  }
  for (const char* command :
       {"gram", "ops", "moments", "commutator-decay", "aw-inner", "aw-modular",
        "aw-centralizer", "aw-thm44", "aw-fixed", "wick", "commutant", "conv-check"}) {
    RunConfig config = parse_config_text(kAWConfig);
    config.command = command;
    if (std::string(command) == "commutant" || std::string(command) == "conv-check") config.N = 7;
    config.params["trials"] = "10";
    const Report report = run(config);
    CAPTURE(command);
    CHECK(report.overall_pass());
  }
}

TEST_CASE("conv-check on the mixed fixture") {
  RunConfig config = parse_config_text(kMixedConfig);
  config.command = "conv-check";
  config.N = 6;
  const Report report = run(config);
  CHECK(report.overall_pass());
}

TEST_CASE("truncation problems surface as failed checks, not exceptions") {
  RunConfig config = parse_config_text(kMixedConfig);
  config.command = "moments";
  config.N = 3;  // too small for the order-6 run
  const Report report = run(config);
  CHECK(!report.overall_pass());
  bool found = false;
  for (const auto& check : report.checks()) {
    if (check.name == "truncation") found = true;
  }
  CHECK(found);
}

TEST_CASE("trace-check refuses the wrong model kind") {
  RunConfig config = parse_config_text(kAWConfig);
  config.command = "trace-check";
  CHECK_THROWS_AS(run(config), UsageError);
}

TEST_CASE("gram command in exact precision") {
  RunConfig config = parse_config_text(kMixedConfig);
  config.command = "gram";
  config.N = 4;
  config.precision = "exact";
  const Report report = run(config);
  CHECK(report.overall_pass());
  bool found_exact = false;
  for (const auto& check : report.checks()) {
    if (check.name.find("exact_oracle_equal") != std::string::npos) found_exact = true;
  }
  CHECK(found_exact);
}

TEST_CASE("gram command populates and reuses the cache") {
  namespace fs = std::filesystem;
  const std::string dir = (fs::temp_directory_path() / "qfock_cli_cache").string();
  fs::remove_all(dir);
  RunConfig config = parse_config_text(kMixedConfig);
  config.command = "gram";
  config.N = 4;
  config.cache_dir = dir;
  const Report first = run(config);
  CHECK(first.overall_pass());
  CHECK(first.to_json()["cache"]["writes"] == 5);
  const Report second = run(config);
  CHECK(second.to_json()["cache"]["hits"] == 5);
  fs::remove_all(dir);
}
