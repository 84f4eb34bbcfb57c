// Copyright 2026 The renewal-kit Authors
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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "renewal_kit/cli.hpp"
#include "renewal_kit/config.hpp"
#include "renewal_kit/distribution.hpp"
#include "renewal_kit/error.hpp"

namespace rk = renewal_kit;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("rk_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string read(const std::string& name) {
    std::ifstream f(dir_ / name);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }
  std::string out(const std::string& name) { return (dir_ / name).string(); }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "renewal_kit");
    std::vector<char*> argv;
    for (std::string& a : args) argv.push_back(a.data());
    return rk::run_cli(static_cast<int>(argv.size()), argv.data());
  }

  fs::path dir_;
};

const char* kExpConfig = R"({
  "F0": {"type": "exponential", "rate": 1},
  "P": {"type": "exponential", "rate": 1},
  "grid": {"h": 0.02, "x_max": 30},
  "tau_max": 5,
  "n": 2000
})";

TEST(Config, RoundTrip) {
  const json j = json::parse(R"({
    "F0": {"type": "mixture", "weights": [0.5, 0.5],
           "components": [{"type": "dirac", "c": 1}, {"type": "uniform", "a": 0, "b": 2}]},
    "P": {"type": "erlang", "k": 2, "rate": 1.5},
    "grid": {"h": 0.05, "x_max": 10}, "t": [0.5, 1], "seed": 4, "N": 50})");
  const rk::RunConfig c = rk::config_from_json(j);
  EXPECT_EQ(c.ensemble_size, 50u);
  EXPECT_EQ(c.seed, 4u);
  EXPECT_DOUBLE_EQ(rk::spec_mean(c.f0), 1.0);
  const rk::RunConfig back = rk::config_from_json(rk::config_to_json(c));
  EXPECT_EQ(rk::config_to_json(back), rk::config_to_json(c));
}

TEST(Config, Rejections) {
  EXPECT_THROW(rk::config_from_json(json::parse(R"({"P": {"type": "dirac", "c": 1}})")),
               rk::ConfigError);
  EXPECT_THROW(rk::spec_from_json(json::parse(R"({"type": "gamma"})")), rk::ConfigError);
  EXPECT_THROW(rk::spec_from_json(json::parse(R"({"type": "erlang", "k": 1.5, "rate": 1})")),
               rk::ConfigError);
  EXPECT_THROW(rk::config_from_json(json::parse(
                   R"({"F0": {"type": "dirac", "c": 1}, "P": {"type": "dirac", "c": 1},
                       "t": [1], "tau": [1]})")),
               rk::ConfigError);
}

TEST(Config, MeasureJsonRoundTrip) {
  const rk::Grid g = rk::Grid::from_step(0.1, 5.0);
  const rk::MixedMeasure m = rk::discretize(
      rk::mixture({0.25, 0.75}, {rk::dirac(1.0), rk::exponential(2.0)}), g);
  const rk::MixedMeasure back = rk::measure_from_json(rk::measure_to_json(m));
  EXPECT_EQ(rk::measure_to_json(back), rk::measure_to_json(m));
  EXPECT_EQ(rk::format_number(0.1), "0.1");
  EXPECT_EQ(rk::format_number(2.0), "2");
}

TEST_F(Cli, UsageAndUnknownCommand) {
  EXPECT_EQ(run({}), rk::kExitUsage);
  EXPECT_EQ(run({"frobnicate"}), rk::kExitUsage);
  EXPECT_EQ(run({"solve", "--bogus"}), rk::kExitUsage);
}

TEST_F(Cli, MissingOrBadConfigIsExitTwo) {
  EXPECT_EQ(run({"renewal"}), rk::kExitConfig);
  EXPECT_EQ(run({"renewal", "--config", out("absent.json")}), rk::kExitConfig);
  const std::string bad = write("bad.json", R"({"F0": {"type": "exponential", "rate": -1},
                                              "P": {"type": "exponential", "rate": 1}})");
  EXPECT_EQ(run({"renewal", "--config", bad}), rk::kExitConfig);
}

TEST_F(Cli, RenewalWritesCsvAndJumps) {
  const std::string cfg = write("c.json", kExpConfig);
  ASSERT_EQ(run({"renewal", "--config", cfg, "--out", out("a.csv")}), rk::kExitOk);
  const std::string csv = read("a.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "tau,A,alpha");
  EXPECT_TRUE(fs::exists(out("a.csv.jumps.json")));
}

TEST_F(Cli, SolveWritesSlices) {
  const std::string cfg = write("c.json", kExpConfig);
  ASSERT_EQ(run({"solve", "--config", cfg, "--tau", "0", "1", "--out", out("u.csv")}), rk::kExitOk);
  std::istringstream in(read("u.csv"));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,tau_or_t,value");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 6), "0,0,1");
}

TEST_F(Cli, RescaleAtZeroEchoesInitialLaw) {
  const std::string cfg = write("c.json", R"({
    "F0": {"type": "mixture", "weights": [0.5, 0.5],
           "components": [{"type": "dirac", "c": 1}, {"type": "uniform", "a": 0, "b": 2}]},
    "P": {"type": "exponential", "rate": 1}, "grid": {"h": 0.05, "x_max": 20}})");
  ASSERT_EQ(run({"rescale", "--config", cfg, "--t", "0", "0.5", "--out", out("r.json")}), rk::kExitOk);
  const json r = json::parse(read("r.json"));
  ASSERT_EQ(r.size(), 2u);
  const rk::RunConfig c = rk::load_config(cfg);
  const json f0 = rk::measure_to_json(
      rk::discretize(c.f0, rk::Grid::from_step(c.grid.h, c.grid.x_max)));
  EXPECT_EQ(r[0]["measure"].dump(), f0.dump());
}

TEST_F(Cli, SimulateModes) {
  const std::string cfg = write("c.json", kExpConfig);
  ASSERT_EQ(run({"simulate", "--config", cfg, "--tau", "1", "--out", out("s.json")}), rk::kExitOk);
  EXPECT_EQ(json::parse(read("s.json"))[0]["samples"].size(), 2000u);
  ASSERT_EQ(run({"simulate", "--config", cfg, "--mode", "mean-renewals", "--tau", "2",
                 "--out", out("m.json")}),
            rk::kExitOk);
  EXPECT_NEAR(json::parse(read("m.json"))[0]["estimate"].get<double>(), 2.0, 0.2);
  EXPECT_EQ(run({"simulate", "--config", cfg, "--mode", "nope", "--tau", "1"}), rk::kExitConfig);
}

TEST_F(Cli, ValidatePassesOnExponential) {
  const std::string cfg = write("c.json", kExpConfig);
  ASSERT_EQ(run({"validate", "--config", cfg, "--out", out("v.json")}), rk::kExitOk);
  for (const json& c : json::parse(read("v.json"))) EXPECT_TRUE(c["pass"].get<bool>()) << c.dump();
}

TEST_F(Cli, ValidateFailureIsExitThree) {
  const std::string cfg = write("c.json", R"({
    "F0": {"type": "exponential", "rate": 1}, "P": {"type": "exponential", "rate": 1},
    "grid": {"h": 0.02, "x_max": 30}, "tau_max": 5, "tol": 1e-14})");
  EXPECT_EQ(run({"validate", "--config", cfg, "--out", out("v.json")}), rk::kExitTolerance);
}

TEST_F(Cli, GoldenPassesAndRejectsOtherLaws) {
  ASSERT_EQ(run({"golden", "--out", out("g.json")}), rk::kExitOk);
  const json g = json::parse(read("g.json"));
  EXPECT_TRUE(g.contains("F_0.5"));
  const std::string cfg = write("c.json", kExpConfig);
  EXPECT_EQ(run({"golden", "--config", cfg}), rk::kExitConfig);
}

}  // namespace
