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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"

#include "advrisk/harness.h"

namespace advrisk::harness {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("advrisk_harness_test_" + name);
  fs::remove_all(d);
  return d;
}

ExperimentConfig config(const std::string& experiment, KeyValues params = {}) {
  ExperimentConfig c;
  c.experiment = experiment;
  c.parameters = std::move(params);
  c.seed = 17;
  return c;
}

// Small parameter sets that exercise every experiment in well under a second.
KeyValues quick(const std::string& experiment) {
  if (experiment == "thm2") return {{"trials", "5"}};
  if (experiment == "sphere") return {{"dim", "40"}, {"m", "200"}, {"n_test", "2000"}, {"distance_seeds", "2"}};
  if (experiment == "poison-game") return {{"trials", "5"}};
  if (experiment == "longtail") return {{"trials", "3"}, {"m", "1500"}, {"scaling_B", "100,400"}};
  if (experiment == "tshape") return {{"trials", "200"}};
  if (experiment == "subcover-demo") return {{"n_balls", "20"}, {"mc_samples", "2000"}, {"dim", "2"}};
  if (experiment == "optimize-c") return {{"dim", "2"}};
  if (experiment == "distances") return {{"n", "60"}, {"dim", "5"}, {"eta", "0.2"}};
  return {};
}

TEST(ParseConfig, KeyValueLines) {
  const KeyValues kv = parse_config("# comment\n\n rho = 0.1 \neta=0.2 # trailing\nregion = interval:0:0.5\n");
  EXPECT_EQ(kv.at("rho"), "0.1");
  EXPECT_EQ(kv.at("eta"), "0.2");
  EXPECT_EQ(kv.at("region"), "interval:0:0.5");
  EXPECT_THROW(parse_config("rho 0.1\n"), std::invalid_argument);
  EXPECT_THROW(parse_config(" = 3\n"), std::invalid_argument);
}

TEST(Validate, TShapeGammaNotAboveRho) {
  const auto v = validate(config("tshape", {{"gamma", "0.1"}, {"rho", "0.1"}}));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].field.find("gamma"), std::string::npos);
  EXPECT_NE(v[0].field.find("rho"), std::string::npos);
}

TEST(Validate, SphereRadius) {
  EXPECT_TRUE(validate(config("sphere")).empty());
  const auto v = validate(config("sphere", {{"rho", "0.3"}}));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].field, "rho");
  EXPECT_NE(v[0].message.find("1/4"), std::string::npos);
}

TEST(Validate, FieldLevelMessages) {
  EXPECT_EQ(validate(config("nope")).at(0).field, "experiment");
  auto v = validate(config("thm2", {{"colour", "red"}}));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].field, "colour");
  v = validate(config("thm2", {{"trials", "2.5"}}));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].field, "trials");
  v = validate(config("thm2", {{"eta", "0"}}));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].field, "eta");
  v = validate(config("thm2", {{"region", "small-cube"}}));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].field, "region");
  v = validate(config("longtail", {{"eta", "0"}}));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].field, "eta,m");
  v = validate(config("poison-game", {{"m", "5"}}));
  ASSERT_EQ(v.size(), 1u);
  ExperimentConfig bad = config("tshape");
  bad.format = "xml";
  EXPECT_EQ(validate(bad).at(0).field, "format");
}

TEST(Validate, DefaultsOfEveryExperimentAreValid) {
  for (const std::string& name : experiment_names()) {
    EXPECT_TRUE(validate(config(name)).empty()) << name;
    EXPECT_TRUE(validate(config(name, quick(name))).empty()) << name;
    EXPECT_FALSE(describe_schema(name).empty());
  }
}

TEST(PlotCsv, RoundTrips) {
  const std::vector<PlotRow> rows{{"a", 0.1, 1.0 / 3, 0.2, 0.4},
                                  {"with,comma \"q\"", -1e-300, 1e300, 0, 5e-324}};
  std::stringstream ss;
  write_plot_csv(rows, ss);
  EXPECT_EQ(read_plot_csv(ss), rows);
}

TEST(FlatCsv, RoundTrips) {
  const std::vector<std::pair<std::string, std::string>> rows{{"a.b", "1"}, {"c", "x,\"y\""}};
  std::stringstream ss;
  write_flat_csv(rows, ss);
  EXPECT_EQ(read_flat_csv(ss), rows);
}

TEST(Run, WritesParsableFiles) {
  ExperimentConfig c = config("thm2", quick("thm2"));
  c.output_dir = fresh_dir("files");
  const RunOutcome out = run(c);
  ASSERT_EQ(out.exit_code, 0) << out.message;
  const auto result = nlohmann::json::parse(slurp(c.output_dir / "result.json"));
  EXPECT_TRUE(result.contains("success_rate"));
  EXPECT_EQ(result["bound"]["N"], 10);
  EXPECT_EQ(result["bound"]["m_required"], 2397);
  const auto manifest = nlohmann::json::parse(slurp(c.output_dir / "manifest.json"));
  EXPECT_EQ(manifest["seed"], 17);
  EXPECT_EQ(manifest["parameters"]["rho"], "0.1");
  EXPECT_TRUE(manifest.contains("wall_time_seconds"));
  EXPECT_TRUE(manifest.contains("version"));
  std::ifstream plot(c.output_dir / "plot.csv");
  EXPECT_FALSE(read_plot_csv(plot).empty());
}

TEST(Run, TwoCubeExample) {
  ExperimentConfig c = config("thm2", {{"distribution", "two-cube"}, {"dim", "2"}, {"region", "small-cube"},
                                       {"trials", "5"}, {"mc_samples", "5000"}});
  c.output_dir = fresh_dir("twocube");
  ASSERT_EQ(run(c).exit_code, 0);
  const auto result = nlohmann::json::parse(slurp(c.output_dir / "result.json"));
  EXPECT_EQ(result["bound"]["N"], 1);
  EXPECT_TRUE(result.contains("success_rate"));
}

TEST(Run, CsvResultRoundTrips) {
  ExperimentConfig c = config("tshape", quick("tshape"));
  c.format = "csv";
  c.output_dir = fresh_dir("csv");
  ASSERT_EQ(run(c).exit_code, 0);
  std::ifstream in(c.output_dir / "result.csv");
  const auto rows = read_flat_csv(in);
  bool found = false;
  for (const auto& [k, v] : rows) found = found || k == "risk_H.mean";
  EXPECT_TRUE(found);
}

TEST(Run, DistancesWritesHistogram) {
  ExperimentConfig c = config("distances", quick("distances"));
  c.output_dir = fresh_dir("hist");
  ASSERT_EQ(run(c).exit_code, 0);
  EXPECT_TRUE(fs::exists(c.output_dir / "histogram.csv"));
}

TEST(Run, ExitCodes) {
  ExperimentConfig c = config("bogus");
  c.output_dir = fresh_dir("codes");
  EXPECT_EQ(run(c).exit_code, 1);
  EXPECT_FALSE(fs::exists(c.output_dir));
  // A grid cover of [0,1]^40 at radius 0.005 does not fit in 64 bits.
  c = config("thm2", {{"dim", "40"}, {"rho", "0.01"}, {"trials", "1"}});
  c.output_dir = fresh_dir("codes");
  const RunOutcome out = run(c);
  EXPECT_EQ(out.exit_code, 2);
  EXPECT_NE(out.message.find("overflow"), std::string::npos) << out.message;
}

TEST(Determinism, SameSeedSamePayloadAcrossWorkers) {
  for (const std::string& name : experiment_names()) {
    ExperimentConfig a = config(name, quick(name));
    ExperimentConfig b = a;
    b.workers = 3;
    EXPECT_EQ(result_payload(a), result_payload(b)) << name;
    ExperimentConfig other = a;
    other.seed = 18;
    if (name != "optimize-c") EXPECT_NE(result_payload(a), result_payload(other)) << name;
  }
}

TEST(Determinism, RerunWritesIdenticalFiles) {
  ExperimentConfig c = config("poison-game", quick("poison-game"));
  c.output_dir = fresh_dir("rerun_a");
  ASSERT_EQ(run(c).exit_code, 0);
  ExperimentConfig d = c;
  d.output_dir = fresh_dir("rerun_b");
  ASSERT_EQ(run(d).exit_code, 0);
  for (const char* f : {"result.json", "plot.csv"}) {
    EXPECT_EQ(slurp(c.output_dir / f), slurp(d.output_dir / f)) << f;
  }
}

}  // namespace
}  // namespace advrisk::harness
