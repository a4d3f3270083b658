// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// advlab: command-line front end for the experiment harness.
//
//   advlab <experiment> [--config FILE] [--seed N] [--out DIR]
//          [--format csv|json] [--workers N] [key=value ...]

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "advrisk/harness.h"

namespace {

namespace h = advrisk::harness;

int list_experiments() {
  for (const std::string& name : h::experiment_names()) {
    std::cout << name << "\n" << h::describe_schema(name);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adversarial-risk experiments under label noise"};
  std::string experiment;
  std::string config_file;
  uint64_t seed = 0;
  std::string out_dir = "out";
  std::string format = "json";
  int workers = 1;
  bool list = false;
  bool validate_only = false;
  std::vector<std::string> overrides;

  app.add_option("experiment", experiment, "experiment name (see --list)");
  app.add_option("overrides", overrides, "key=value parameter overrides");
  app.add_option("--config", config_file, "flat key = value parameter file");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--format", format, "result format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--list", list, "list experiments and their parameters");
  app.add_flag("--validate-only", validate_only, "check the configuration and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  if (list) return list_experiments();
  if (experiment.empty()) {
    std::cerr << "usage: advlab <experiment> [--config FILE] [options] [key=value ...]\n"
              << "run 'advlab --list' for experiments\n";
    return 1;
  }

  h::ExperimentConfig config;
  config.experiment = experiment;
  config.seed = seed;
  config.output_dir = out_dir;
  config.format = format;
  config.workers = workers;
  try {
    if (!config_file.empty()) config.parameters = h::read_config_file(config_file);
  } catch (const std::exception& e) {
    std::cerr << "invalid --config: " << e.what() << "\n";
    return 1;
  }
  for (const std::string& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "invalid override '" << kv << "': expected key=value\n";
      return 1;
    }
    config.parameters[kv.substr(0, eq)] = kv.substr(eq + 1);
  }

  if (validate_only) {
    const auto violations = h::validate(config);
    for (const auto& v : violations) std::cerr << "invalid " << v.field << ": " << v.message << "\n";
    if (violations.empty()) std::cout << "ok\n";
    return violations.empty() ? 0 : 1;
  }
  const h::RunOutcome outcome = h::run(config);
  (outcome.exit_code == 0 ? std::cout : std::cerr) << outcome.message;
  return outcome.exit_code;
}
