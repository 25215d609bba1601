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

#include "qfock/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "qfock/errors.hpp"

namespace qfock {

const std::vector<std::string> kKnownCommands = {
    "gram",          "ops",       "commutator-decay", "moments",       "trace-check",
    "wick",          "commutant", "conv-check",       "aw-inner",      "aw-modular",
    "aw-centralizer", "aw-thm44",  "aw-fixed"};

namespace {

const std::set<std::string> kKnownParams = {
    "trials", "degree_cap", "order", "letter", "max_order", "naive_levels",
    "cap",    "deg_xi",     "deg_eta", "deg_v", "setups"};

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

double parse_double(const std::string& field, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("config: field '" + field + "' has a malformed number: " + text);
  }
}

long long parse_int(const std::string& field, const std::string& text) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("config: field '" + field + "' has a malformed integer: " + text);
  }
}

}  // namespace

int RunConfig::param_int(const std::string& name, int fallback) const {
  auto it = params.find(name);
  if (it == params.end()) return fallback;
  return static_cast<int>(parse_int(name, it->second));
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig config;
  bool saw_kind = false;
  std::vector<std::vector<double>> q_rows;

  std::istringstream in(text);
  std::string raw;
  enum class BlockState { none, q, blocks };
  BlockState state = BlockState::none;

  while (std::getline(in, raw)) {
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::vector<std::string> tokens = tokenize(raw);
    if (tokens.empty()) continue;

    if (state == BlockState::q) {
      if (tokens[0] == "}") {
        state = BlockState::none;
        continue;
      }
      if (tokens[0] != "row")
        throw UsageError("config: inside Q { } only 'row' lines are allowed, got '" + tokens[0] +
                         "'");
      std::vector<double> row;
      std::vector<std::string> row_text;
      for (std::size_t k = 1; k < tokens.size(); ++k) {
        row.push_back(parse_double("Q row", tokens[k]));
        row_text.push_back(tokens[k]);
      }
      q_rows.push_back(std::move(row));
      config.q_rows_text.push_back(std::move(row_text));
      continue;
    }
    if (state == BlockState::blocks) {
      if (tokens[0] == "}") {
        state = BlockState::none;
        continue;
      }
      if (tokens[0] == "invariant") {
        config.blocks.push_back(AWBlockSpec{1.0});
      } else if (tokens[0] == "pair") {
        if (tokens.size() != 2) throw UsageError("config: 'pair' needs one eigenvalue");
        config.blocks.push_back(AWBlockSpec{parse_double("pair", tokens[1])});
      } else {
        throw UsageError("config: unknown block kind '" + tokens[0] + "'");
      }
      continue;
    }

    const std::string& key = tokens[0];
    if (key == "Q" && tokens.size() == 2 && tokens[1] == "{") {
      state = BlockState::q;
      continue;
    }
    if (key == "blocks" && tokens.size() == 2 && tokens[1] == "{") {
      state = BlockState::blocks;
      continue;
    }
    if (key == "tolerance") {
      if (tokens.size() != 3) throw UsageError("config: tolerance lines read 'tolerance NAME VALUE'");
      config.tolerances[tokens[1]] = parse_double("tolerance " + tokens[1], tokens[2]);
      continue;
    }
    if (tokens.size() != 2)
      throw UsageError("config: field '" + key + "' expects exactly one value");
    const std::string& value = tokens[1];

    if (key == "kind") {
      if (value == "mixed") config.kind = RunConfig::Kind::mixed;
      else if (value == "araki-woods") config.kind = RunConfig::Kind::araki_woods;
      else throw UsageError("config: kind must be 'mixed' or 'araki-woods', got '" + value + "'");
      saw_kind = true;
    } else if (key == "command") {
      config.command = value;
    } else if (key == "d") {
      config.d = static_cast<int>(parse_int(key, value));
    } else if (key == "N") {
      config.N = static_cast<int>(parse_int(key, value));
    } else if (key == "seed") {
      config.seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "precision") {
      if (value != "float" && value != "exact")
        throw UsageError("config: precision must be 'float' or 'exact'");
      config.precision = value;
    } else if (key == "cache_dir") {
      config.cache_dir = value;
    } else if (key == "budget") {
      config.budget = parse_int(key, value);
    } else if (key == "q") {
      config.q_scalar = parse_double(key, value);
    } else if (kKnownParams.count(key) > 0) {
      config.params[key] = value;
    } else {
      throw UsageError("config: unknown field '" + key + "'");
    }
  }
  if (state != BlockState::none) throw UsageError("config: unterminated block");
  if (!saw_kind) throw UsageError("config: missing field 'kind'");
  if (config.N < 1) throw UsageError("config: field 'N' must be >= 1");

  if (config.kind == RunConfig::Kind::mixed) {
    if (q_rows.empty()) throw UsageError("config: mixed models need a Q { } block");
    const std::size_t d = q_rows.size();
    if (config.d == 0) config.d = static_cast<int>(d);
    if (config.d != static_cast<int>(d))
      throw UsageError("config: field 'd' disagrees with the number of Q rows");
    Eigen::MatrixXd q(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      if (q_rows[i].size() != d)
        throw UsageError("config: Q row " + std::to_string(i) + " has " +
                         std::to_string(q_rows[i].size()) + " entries, expected " +
                         std::to_string(d));
      for (std::size_t j = 0; j < d; ++j) q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = q_rows[i][j];
    }
    for (Eigen::Index i = 0; i < q.rows(); ++i) {
      for (Eigen::Index j = 0; j < i; ++j) {
        if (q(i, j) != q(j, i))
          throw UsageError("config: Q is not symmetric at entry pair (" + std::to_string(i) +
                           "," + std::to_string(j) + ") vs (" + std::to_string(j) + "," +
                           std::to_string(i) + ")");
      }
    }
    for (Eigen::Index i = 0; i < q.rows(); ++i)
      for (Eigen::Index j = 0; j < q.cols(); ++j)
        if (!(std::abs(q(i, j)) < 1.0))
          throw UsageError("config: |Q entry (" + std::to_string(i) + "," + std::to_string(j) +
                           ")| must be < 1");
    config.q_entries = std::move(q);
  } else {
    if (config.blocks.empty())
      throw UsageError("config: araki-woods models need a blocks { } block");
    if (!(config.q_scalar > -1.0 && config.q_scalar < 1.0))
      throw UsageError("config: field 'q' must lie in (-1, 1)");
    for (const AWBlockSpec& b : config.blocks)
      if (!(b.lambda > 0.0)) throw UsageError("config: block eigenvalues must be positive");
    int m = 0;
    for (const AWBlockSpec& b : config.blocks) m += b.lambda == 1.0 ? 1 : 2;
    config.d = m;
  }

  if (!config.command.empty() &&
      std::find(kKnownCommands.begin(), kKnownCommands.end(), config.command) ==
          kKnownCommands.end())
    throw UsageError("config: unknown command '" + config.command + "'");
  return config;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("config: cannot read file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

}  // namespace qfock
