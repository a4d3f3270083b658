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

// Experiment configuration, validation, dispatch and output files.

#ifndef ADVRISK_HARNESS_H_
#define ADVRISK_HARNESS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "advrisk/distributions.h"

namespace advrisk::harness {

struct ExperimentConfig {
  std::string experiment;
  KeyValues parameters;
  uint64_t seed = 0;
  std::filesystem::path output_dir = "out";
  std::string format = "json";  // json | csv
  int workers = 1;
};

struct Violation {
  std::string field;
  std::string message;
};

const std::vector<std::string>& experiment_names();

// Empty iff `run` would start computing.
std::vector<Violation> validate(const ExperimentConfig& config);

// Parameters with schema defaults filled in; requires a known experiment.
KeyValues resolved_parameters(const ExperimentConfig& config);

// Human-readable parameter list of one experiment.
std::string describe_schema(const std::string& experiment);

// Flat "key = value" text; '#' starts a comment; blank lines ignored.
// Throws std::invalid_argument on a malformed line.
KeyValues parse_config(std::string_view text);
KeyValues read_config_file(const std::filesystem::path& path);

struct PlotRow {
  std::string series;
  double x = 0.0;
  double y = 0.0;
  double y_lo = 0.0;
  double y_hi = 0.0;
  friend bool operator==(const PlotRow&, const PlotRow&) = default;
};

void write_plot_csv(const std::vector<PlotRow>& rows, std::ostream& out);
std::vector<PlotRow> read_plot_csv(std::istream& in);

// Two-column key,value CSV; nested results are flattened with '.' paths.
void write_flat_csv(const std::vector<std::pair<std::string, std::string>>& rows,
                    std::ostream& out);
std::vector<std::pair<std::string, std::string>> read_flat_csv(std::istream& in);

struct RunOutcome {
  int exit_code = 0;  // 0 success, 1 validation failure, 2 runtime error
  std::string message;
  std::vector<std::filesystem::path> files;
};

// Validates, runs, and writes result.{json,csv}, plot.csv, manifest.json and
// any experiment-specific files into config.output_dir.
RunOutcome run(const ExperimentConfig& config);

// The result payload as serialized text (no timestamps), for determinism
// checks; throws on invalid configs.
std::string result_payload(const ExperimentConfig& config);

}  // namespace advrisk::harness

#endif  // ADVRISK_HARNESS_H_
