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

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qfock/errors.hpp"
#include "qfock/gram_cache.hpp"
#include "qfock/runner.hpp"

namespace {

int run_command(const std::string& command, const std::string& config_path,
                const std::string& out_path, const std::string& cache_dir,
                const std::string& seed_text, const std::string& precision) {
  qfock::RunConfig config = qfock::parse_config_file(config_path);
  config.command = command;
  if (!cache_dir.empty()) config.cache_dir = cache_dir;
  if (!seed_text.empty()) config.seed = std::stoull(seed_text);
  if (!precision.empty()) {
    if (precision != "float" && precision != "exact")
      throw qfock::UsageError("--precision must be float or exact");
    config.precision = precision;
  }

  const qfock::Report report = qfock::run(config);
  const std::string json = report.to_json().dump(2);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw qfock::UsageError("cannot write report to " + out_path);
    out << json << "\n";
  }
  std::cout << json << "\n";
  std::cerr << report.summary();
  return report.overall_pass() ? 0 : 1;
}

int run_cache_admin(const std::string& dir, const std::string& action,
                    const std::string& out_path) {
  nlohmann::json entries = nlohmann::json::array();
  bool ok = true;
  if (action == "list" || action == "verify") {
    const auto listing = action == "list" ? qfock::cache_list(dir) : qfock::cache_verify(dir);
    for (const auto& e : listing) {
      nlohmann::json item{{"file", e.filename}, {"d", e.d}, {"n", e.n}, {"ok", e.ok}};
      char hash[32];
      std::snprintf(hash, sizeof(hash), "%016llx", static_cast<unsigned long long>(e.qhash));
      item["qhash"] = hash;
      if (!e.problem.empty()) {
        item["problem"] = e.problem;
        std::cerr << "warning: " << e.filename << ": " << e.problem << "\n";
      }
      if (action == "verify" && !e.ok) ok = false;
      entries.push_back(std::move(item));
    }
  } else if (action == "purge") {
    const int removed = qfock::cache_purge(dir);
    entries.push_back(nlohmann::json{{"removed", removed}});
  } else {
    throw qfock::UsageError("cache action must be list, verify, or purge");
  }
  nlohmann::json doc{{"command", "cache"}, {"action", action}, {"dir", dir},
                     {"entries", entries}, {"overall_pass", ok}};
  const std::string json = doc.dump(2);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << json << "\n";
  }
  std::cout << json << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qfock: truncated deformed-Fock-space verification suites"};
  app.require_subcommand(1);

  std::string config_path, out_path, cache_dir, seed_text, precision;
  std::vector<CLI::App*> verification_commands;
  for (const std::string& name : qfock::kKnownCommands) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " suite");
    sub->add_option("--config", config_path, "run configuration file")->required();
    sub->add_option("--out", out_path, "write the JSON report here as well");
    sub->add_option("--cache", cache_dir, "Gram block cache directory");
    sub->add_option("--seed", seed_text, "64-bit seed override");
    sub->add_option("--precision", precision, "float | exact");
    verification_commands.push_back(sub);
  }

  std::string admin_dir, admin_action = "list", admin_out;
  CLI::App* cache_cmd = app.add_subcommand("cache", "inspect or clear the Gram block cache");
  cache_cmd->add_option("--dir", admin_dir, "cache directory")->required();
  cache_cmd->add_option("--action", admin_action, "list | verify | purge");
  cache_cmd->add_option("--out", admin_out, "write the JSON report here as well");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cache_cmd->parsed()) return run_cache_admin(admin_dir, admin_action, admin_out);
    for (std::size_t k = 0; k < verification_commands.size(); ++k) {
      if (verification_commands[k]->parsed())
        return run_command(qfock::kKnownCommands[k], config_path, out_path, cache_dir, seed_text,
                           precision);
    }
    std::cerr << "error: no command given\n";
    return 2;
  } catch (const qfock::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
