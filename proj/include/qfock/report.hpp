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

#ifndef QFOCK_REPORT_HPP_
#define QFOCK_REPORT_HPP_

#include <string>
#include <vector>

#include <json.hpp>

#include "qfock/config.hpp"

namespace qfock {

inline constexpr const char* kVersion = "0.1.0";

struct Check {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  /// Equality-style check: |lhs - rhs| <= tolerance.
  Check& check_eq(const std::string& name, double lhs, double rhs, double tolerance);
  /// Bound-style check: lhs <= rhs + tolerance.
  Check& check_le(const std::string& name, double lhs, double rhs, double tolerance);
  /// Witness-style check: lhs > rhs (a violation that must be exhibited).
  Check& check_gt(const std::string& name, double lhs, double rhs);
  void add_error(const std::string& name, const std::string& message);

  bool overall_pass() const;
  const std::vector<Check>& checks() const { return checks_; }
  const std::string& command() const { return command_; }

  void set_config_echo(nlohmann::json echo) { config_echo_ = std::move(echo); }
  void set_cache_stats(int hits, int writes) { cache_hits_ = hits; cache_writes_ = writes; }
  void set_total_ms(double ms) { total_ms_ = ms; }

  nlohmann::json to_json() const;
  /// One line per check plus a verdict, for the terminal.
  std::string summary() const;

 private:
  std::string command_;
  nlohmann::json config_echo_;
  std::vector<Check> checks_;
  int cache_hits_ = 0;
  int cache_writes_ = 0;
  double total_ms_ = 0.0;
};

nlohmann::json config_to_json(const RunConfig& config);

}  // namespace qfock

#endif  // QFOCK_REPORT_HPP_
