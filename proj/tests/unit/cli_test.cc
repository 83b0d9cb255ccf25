// Copyright 2026 The csg-check Authors
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
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "random_models.h"
#include "robot_grid.h"

namespace csg::tools {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("csg_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string Read(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  std::vector<std::vector<std::string>> Rows(const fs::path& csv) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(Read(csv));
    for (std::string line; std::getline(in, line);) {
      std::vector<std::string> fields;
      std::string field;
      bool quoted = false;
      for (char ch : line) {
        if (ch == '"') {
          quoted = !quoted;
        } else if (ch == ',' && !quoted) {
          fields.push_back(field);
          field.clear();
        } else {
          field += ch;
        }
      }
      fields.push_back(field);
      rows.push_back(fields);
    }
    return rows;
  }
  RunConfig Config(const std::string& model, const std::string& prop, const fs::path& out) {
    RunConfig c;
    c.model_path = model;
    c.properties = {prop};
    c.out_dir = out.string();
    return c;
  }

  fs::path dir_;
};

std::string ModelPath(const std::string& name) { return std::string(CSG_MODELS_DIR) + "/" + name; }

TEST_F(CliTest, ResultsCsvForRps) {
  std::ostringstream err;
  const RunConfig c =
      Config(ModelPath("rps.csg"), "<<p1>>Pmax=? [ !\"win2\" U \"win1\" ]", dir_ / "out");
  EXPECT_EQ(tools::Run(c, err), kExitOk) << err.str();
  const auto rows = Rows(dir_ / "out" / "results.csv");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0][0], "property");
  EXPECT_EQ(rows[0][3], "value");
  EXPECT_EQ(rows[1][2], "0");
  EXPECT_NEAR(std::stod(rows[1][3]), 0.5, 1e-5);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "diagnostics.log"));
}

TEST_F(CliTest, SweepIsMonotone) {
  RobotGridOptions o;
  o.size = 4;
  const std::string model = Write("robots.csg", RobotGridModel(o));
  RunConfig c = Config(model, "<<rbt1>>Pmax=? [ !\"c\" U<=${k} \"g1\" ]", dir_ / "out");
  c.sweeps = {ParseSweep("k=1..10")};
  std::ostringstream err;
  ASSERT_EQ(tools::Run(c, err), kExitOk) << err.str();
  const auto rows = Rows(dir_ / "out" / "results.csv");
  ASSERT_EQ(rows.size(), 11u);
  double prev = -1.0;
  for (size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i][1], "k=" + std::to_string(i));
    const double v = std::stod(rows[i][3]);
    EXPECT_GE(v, prev);
    prev = v;
  }
  EXPECT_GT(prev, 0.0);
}

TEST_F(CliTest, ParseSweepForms) {
  const Sweep range = ParseSweep("k=3..5");
  EXPECT_EQ(range.name, "k");
  EXPECT_EQ(range.values, (std::vector<std::string>{"3", "4", "5"}));
  const Sweep list = ParseSweep("q=0.5,0.9");
  EXPECT_EQ(list.name, "q");
  EXPECT_EQ(list.values, (std::vector<std::string>{"0.5", "0.9"}));
}

TEST_F(CliTest, ResultsAreByteIdenticalAcrossRunsAndWorkers) {
  RobotGridOptions o;
  o.size = 4;
  const std::string model = Write("robots.csg", RobotGridModel(o));
  const std::string prop = "<<rbt1>>Pmax=? [ !\"c\" U \"g1\" ]";
  std::string first;
  int run = 0;
  for (int workers : {1, 1, 4}) {
    const fs::path out = dir_ / ("run" + std::to_string(run++));
    RunConfig c = Config(model, prop, out);
    c.workers = workers;
    c.all_states = true;
    std::ostringstream err;
    ASSERT_EQ(tools::Run(c, err), kExitOk) << err.str();
    const std::string text = Read(out / "results.csv");
    if (first.empty()) {
      first = text;
    } else {
      EXPECT_EQ(text, first) << "workers " << workers;
    }
  }
}

TEST_F(CliTest, StrategyExports) {
  RunConfig c = Config(ModelPath("rps.csg"), "<<p1>>Pmax=? [ !\"win2\" U \"win1\" ]", dir_ / "out");
  c.exports = {"table", "graph"};
  std::ostringstream err;
  ASSERT_EQ(tools::Run(c, err), kExitOk) << err.str();
  const std::string table = Read(dir_ / "out" / "strategy_1.csv");
  EXPECT_EQ(table.rfind("state,memory,step,action,prob", 0), 0u);
  EXPECT_EQ(Read(dir_ / "out" / "strategy_1.dot").rfind("digraph", 0), 0u);
}

int Shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST_F(CliTest, ExitCodes) {
  const std::string bin = CSG_CHECK_BINARY;
  const std::string out = " --out " + (dir_ / "x").string() + " >/dev/null 2>&1";
  EXPECT_EQ(Shell(bin + " " + (dir_ / "missing.csg").string() + " -p 'true'" + out), kExitError);
  const std::string rps = ModelPath("rps.csg");
  EXPECT_EQ(Shell(bin + " " + rps + " -p '<<p1>>P>=0.9 [ !\"win2\" U \"win1\" ]'" + out),
            kExitViolated);
  EXPECT_EQ(Shell(bin + " " + rps + " -p '<<p1>>P>=0.4 [ !\"win2\" U \"win1\" ]'" + out),
            kExitOk);
  EXPECT_EQ(Shell(bin + " " + rps + " -p '<<p1>>P>=0.4 [ F ]'" + out), kExitError);
  EXPECT_EQ(Shell(bin + " " + ModelPath("osc_until.csg") +
                  " -p '<<p1:p2>>max=? ( P [ F \"a1\" ] + P [ F \"a2\" ] )'" + out),
            kExitError);
  EXPECT_EQ(Shell(bin + " " + ModelPath("osc_until.csg") + " --force" +
                  " -p '<<p1:p2>>max=? ( P [ F \"a1\" ] + P [ F \"a2\" ] )'" + out),
            kExitOk);
}

TEST_F(CliTest, ParseErrorsShowPosition) {
  const std::string bad = Write("bad.csg", "csg\nplayers 1\nplayer p actions a\nstate 0 init\nfoo\n");
  std::ostringstream err;
  RunConfig c = Config(bad, "true", dir_ / "out");
  EXPECT_EQ(tools::Run(c, err), kExitError);
  EXPECT_NE(err.str().find("bad.csg:5:"), std::string::npos) << err.str();
}

TEST_F(CliTest, DiagnosticsLogRecordsAssumptions) {
  RunConfig c = Config(ModelPath("osc_until.csg"),
                       "<<p1:p2>>max=? ( P [ F \"a1\" ] + P [ F \"a2\" ] )", dir_ / "out");
  c.force = true;
  std::ostringstream err;
  ASSERT_EQ(tools::Run(c, err), kExitOk) << err.str();
  const std::string log = Read(dir_ / "out" / "diagnostics.log");
  EXPECT_NE(log.find("property=1"), std::string::npos) << log;
  EXPECT_NE(log.find("assumption"), std::string::npos) << log;
}

TEST(RobotGridTest, StateCounts) {
  for (auto [size, states] : {std::pair{4, 226}, std::pair{5, 577}}) {
    RobotGridOptions o;
    o.size = size;
    const Csg g = oracle::ParseCsg(RobotGridModel(o));
    EXPECT_EQ(g.num_states(), states) << size;
    EXPECT_EQ(g.num_players(), 2);
  }
}

}  // namespace
}  // namespace csg::tools
