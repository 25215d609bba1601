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

#include "qfock/report.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Core>

namespace qfock {

namespace {

double sanitize(double v, bool* finite) {
  if (std::isfinite(v)) return v;
  *finite = false;
  return 0.0;
}

}  // namespace

Check& Report::check_eq(const std::string& name, double lhs, double rhs, double tolerance) {
  bool finite = true;
  Check check{name, sanitize(lhs, &finite), sanitize(rhs, &finite), tolerance, false, ""};
  check.pass = finite && std::abs(check.lhs - check.rhs) <= tolerance;
  if (!finite) check.note = "non-finite value";
  checks_.push_back(check);
  return checks_.back();
}

Check& Report::check_le(const std::string& name, double lhs, double rhs, double tolerance) {
  bool finite = true;
  Check check{name, sanitize(lhs, &finite), sanitize(rhs, &finite), tolerance, false, ""};
  check.pass = finite && check.lhs <= check.rhs + tolerance;
  if (!finite) check.note = "non-finite value";
  checks_.push_back(check);
  return checks_.back();
}

Check& Report::check_gt(const std::string& name, double lhs, double rhs) {
  bool finite = true;
  Check check{name, sanitize(lhs, &finite), sanitize(rhs, &finite), 0.0, false, ""};
  check.pass = finite && check.lhs > check.rhs;
  if (!finite) check.note = "non-finite value";
  checks_.push_back(check);
  return checks_.back();
}

void Report::add_error(const std::string& name, const std::string& message) {
  Check check{name, 0.0, 0.0, 0.0, false, message};
  checks_.push_back(check);
}

bool Report::overall_pass() const {
  for (const Check& check : checks_) {
    if (!check.pass) return false;
  }
  return true;
}

nlohmann::json Report::to_json() const {
  nlohmann::json checks = nlohmann::json::array();
  for (const Check& check : checks_) {
    nlohmann::json entry{{"name", check.name},
                         {"lhs", check.lhs},
                         {"rhs", check.rhs},
                         {"tolerance", check.tolerance},
                         {"pass", check.pass}};
    if (!check.note.empty()) entry["note"] = check.note;
    checks.push_back(std::move(entry));
  }
  return nlohmann::json{
      {"command", command_},
      {"overall_pass", overall_pass()},
      {"config", config_echo_},
      {"checks", std::move(checks)},
      {"timings", {{"total_ms", total_ms_}}},
      {"versions",
       {{"qfock", kVersion},
        {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                      "." + std::to_string(EIGEN_MINOR_VERSION)}}},
      {"cache", {{"hits", cache_hits_}, {"writes", cache_writes_}}}};
}

std::string Report::summary() const {
  std::ostringstream out;
  for (const Check& check : checks_) {
    out << (check.pass ? "[pass] " : "[FAIL] ") << check.name << "  lhs=" << check.lhs
        << " rhs=" << check.rhs << " tol=" << check.tolerance;
    if (!check.note.empty()) out << "  (" << check.note << ")";
    out << "\n";
  }
  out << (overall_pass() ? "OVERALL PASS" : "OVERALL FAIL") << "\n";
  return out.str();
}

nlohmann::json config_to_json(const RunConfig& config) {
  nlohmann::json j{{"kind", config.kind == RunConfig::Kind::mixed ? "mixed" : "araki-woods"},
                   {"command", config.command},
                   {"N", config.N},
                   {"seed", config.seed},
                   {"precision", config.precision},
                   {"budget", config.budget}};
  if (!config.cache_dir.empty()) j["cache_dir"] = config.cache_dir;
  if (config.kind == RunConfig::Kind::mixed) {
    j["d"] = config.d;
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < config.q_entries.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index k = 0; k < config.q_entries.cols(); ++k) row.push_back(config.q_entries(i, k));
      rows.push_back(std::move(row));
    }
    j["Q"] = std::move(rows);
  } else {
    j["dim_R"] = config.d;
    j["q"] = config.q_scalar;
    nlohmann::json blocks = nlohmann::json::array();
    for (const AWBlockSpec& b : config.blocks) {
      if (b.lambda == 1.0) blocks.push_back("invariant");
      else blocks.push_back(nlohmann::json{{"pair", b.lambda}});
    }
    j["blocks"] = std::move(blocks);
  }
  if (!config.tolerances.empty()) j["tolerances"] = config.tolerances;
  if (!config.params.empty()) j["params"] = config.params;
  return j;
}

}  // namespace qfock
