// Copyright 2026 The oodlab Authors.
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

#include "oodlab/report.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

namespace oodlab {
namespace {

namespace fs = std::filesystem;

class ReportTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("oodlab_report_" + std::string(info->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  static std::string read(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
  }

  ScenarioConfig config(std::string scenario, fs::path sub = "out") {
    ScenarioConfig c;
    c.scenario = std::move(scenario);
    c.output_dir = dir_ / sub;
    return c;
  }

  fs::path dir_;
};

TEST_F(ReportTest, Table1Csv) {
  std::ostringstream err;
  ASSERT_EQ(run_scenario(config("table1"), err), 0) << err.str();
  EXPECT_EQ(read(dir_ / "out" / "table1.csv"),
            "Oracle,10^4,10^3,10^2\n-13.8155,-13.8255,-13.8165,-13.8156\n");
  const auto report = nlohmann::json::parse(read(dir_ / "out" / "report.json"));
  EXPECT_EQ(report["schema_version"], 1);
  EXPECT_EQ(report["scenario"], "table1");
  EXPECT_TRUE(report["config"]["params"].contains("supp_p"));
  EXPECT_TRUE(fs::exists(dir_ / "out" / "table1.svg"));
  EXPECT_TRUE(err.str().empty());
}

TEST_F(ReportTest, UnknownScenarioWritesNothing) {
  std::ostringstream err;
  EXPECT_EQ(run_scenario(config("nope"), err), 2);
  EXPECT_FALSE(fs::exists(dir_ / "out"));
  const std::string message = err.str();
  EXPECT_EQ(std::count(message.begin(), message.end(), '\n'), 1);
  EXPECT_THROW(compute_scenario(config("nope")), UnknownScenario);
}

TEST_F(ReportTest, InvalidParametersExitThree) {
  std::ostringstream err;
  auto c = config("table1");
  c.params = {{"supp_p", "many"}};
  EXPECT_EQ(run_scenario(c, err), 3);
  c.params = {{"unknown_key", 1}};
  EXPECT_EQ(run_scenario(c, err), 3);
  c = config("wrong-model");
  c.params = {{"q", {{"type", "diagonal_gaussian"}, {"mean", {0.0}}, {"variance", {0.5}}}}};
  EXPECT_EQ(run_scenario(c, err), 3);  // p/q not integrable
  c = config("fig1");
  c.sample_count = 0;
  EXPECT_EQ(run_scenario(c, err), 3);
  EXPECT_FALSE(fs::exists(dir_ / "out"));
}

TEST_F(ReportTest, ReportsAreByteIdenticalAcrossRuns) {
  for (const std::string name : {"fig1", "wrong-model", "level-set", "nt-train"}) {
    auto a = config(name, name + "_a"), b = config(name, name + "_b");
    a.sample_count = b.sample_count = 2000;
    a.seed = b.seed = 99;
    std::ostringstream err;
    ASSERT_EQ(run_scenario(a, err), 0) << err.str();
    ASSERT_EQ(run_scenario(b, err), 0) << err.str();
    EXPECT_EQ(read(a.output_dir / "report.json"), read(b.output_dir / "report.json")) << name;
  }
}

TEST_F(ReportTest, EmbeddedConfigReproducesTheRun) {
  auto a = config("overlap-bound", "a");
  a.sample_count = 3000;
  a.seed = 5;
  a.params = {{"n_train", 300}};
  std::ostringstream err;
  ASSERT_EQ(run_scenario(a, err), 0) << err.str();
  const auto first = nlohmann::json::parse(read(a.output_dir / "report.json"));
  ScenarioConfig b = scenario_config_from_json(first["config"]);
  b.output_dir = dir_ / "b";
  ASSERT_EQ(run_scenario(b, err), 0) << err.str();
  EXPECT_EQ(read(a.output_dir / "report.json"), read(b.output_dir / "report.json"));
  EXPECT_EQ(first["config"]["params"]["margin"], 0.01);
}

TEST_F(ReportTest, NoPlotsSkipsSvg) {
  auto c = config("wrong-model");
  c.sample_count = 1000;
  c.plots = false;
  std::ostringstream err;
  ASSERT_EQ(run_scenario(c, err), 0);
  EXPECT_TRUE(fs::exists(c.output_dir / "wrong_model_roc.csv"));
  EXPECT_FALSE(fs::exists(c.output_dir / "wrong_model_roc.svg"));
}

TEST_F(ReportTest, PlotsAreSelfContained) {
  for (const std::string name : {"fig1", "wrong-model", "table1"}) {
    auto c = config(name);
    c.sample_count = 2000;
    const ScenarioOutput out = compute_scenario(c);
    ASSERT_FALSE(out.plots.empty()) << name;
    for (const auto& p : out.plots) {
      EXPECT_EQ(p.contents.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\"", 0), 0u);
      EXPECT_EQ(p.contents.find("href"), std::string::npos);
      EXPECT_NE(p.contents.find("</svg>"), std::string::npos);
    }
  }
}

TEST_F(ReportTest, Fig1Results) {
  auto c = config("fig1");
  c.seed = 7;
  const auto r = compute_scenario(c).report["results"];
  EXPECT_TRUE(r["ks_below_critical"].get<bool>());
  EXPECT_TRUE(r["aucs_within_0_49_0_51"].get<bool>());
  EXPECT_EQ(compute_scenario(c).report["n"], 100000);
}

TEST_F(ReportTest, EveryScenarioRuns) {
  for (const auto& name : scenario_names()) {
    auto c = config(name);
    c.sample_count = name == "nt-train" ? 500 : 2000;
    const auto out = compute_scenario(c);
    EXPECT_EQ(out.report["schema_version"], kReportSchemaVersion);
    EXPECT_FALSE(out.tables.empty()) << name;
    EXPECT_TRUE(out.warnings.empty()) << name;
  }
}

TEST(ScenarioConfigJson, Parsing) {
  const auto c = scenario_config_from_json({{"scenario", "fig1"}, {"seed", 3}, {"n", 10}});
  EXPECT_EQ(c.scenario, "fig1");
  EXPECT_EQ(c.seed, 3u);
  EXPECT_EQ(*c.sample_count, 10u);
  EXPECT_THROW(scenario_config_from_json({{"n", 0}}), InvalidArgument);
  EXPECT_THROW(scenario_config_from_json({{"bogus", 0}}), InvalidArgument);
  EXPECT_THROW(scenario_config_from_json({{"seed", "x"}}), InvalidArgument);
}

}  // namespace
}  // namespace oodlab
