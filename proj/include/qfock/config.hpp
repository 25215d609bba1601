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

#ifndef QFOCK_CONFIG_HPP_
#define QFOCK_CONFIG_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qfock/araki_woods.hpp"
#include "qfock/fock_basis.hpp"

namespace qfock {

/// One run of the verification front end: model, command, parameters.
///
/// Parsed from a flat key-value document with nested blocks for the
/// deformation rows and the generator eigenvalue blocks:
///
///   kind      mixed
///   command   trace-check
///   d         2
///   N         8
///   seed      7
///   precision float
///   Q {
///     row  0.0  0.5
///     row  0.5  0.3
///   }
///   trials     50
///   degree_cap 3
///   tolerance  traciality 1e-8
///
/// and for the deformed-group models:
///
///   kind    araki-woods
///   command aw-modular
///   q       0.5
///   N       4
///   blocks {
///     invariant
///     pair 4.0
///   }
struct RunConfig {
  enum class Kind { mixed, araki_woods };

  Kind kind = Kind::mixed;
  std::string command;
  int d = 0;  // mixed letter count
  int N = -1;
  std::uint64_t seed = 1;
  std::string precision = "float";
  std::string cache_dir;
  std::int64_t budget = FockBasis::kDefaultBudget;

  Eigen::MatrixXd q_entries;                   // mixed
  std::vector<std::vector<std::string>> q_rows_text;  // verbatim, for exact mode
  double q_scalar = 0.0;                       // araki-woods
  std::vector<AWBlockSpec> blocks;             // araki-woods

  std::map<std::string, double> tolerances;
  std::map<std::string, std::string> params;

  double tolerance(const std::string& name, double fallback) const {
    auto it = tolerances.find(name);
    return it == tolerances.end() ? fallback : it->second;
  }
  int param_int(const std::string& name, int fallback) const;
  bool has_param(const std::string& name) const { return params.count(name) > 0; }
};

extern const std::vector<std::string> kKnownCommands;

/// Parses and validates; throws UsageError naming the offending field.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

}  // namespace qfock

#endif  // QFOCK_CONFIG_HPP_
