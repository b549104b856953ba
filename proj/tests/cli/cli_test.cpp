#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "annealpath/export.hpp"
#include "commands.hpp"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using annealpath::cli::run_cli;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> data_rows(const fs::path& csv) {
  std::vector<std::string> rows;
  std::istringstream in(slurp(csv));
  std::string line;
  std::getline(in, line);  // units comment
  std::getline(in, line);  // header
  while (std::getline(in, line)) rows.push_back(line);
  return rows;
}

std::vector<std::string> split(const std::string& row) {
  std::vector<std::string> out;
  std::istringstream in(row);
  for (std::string cell; std::getline(in, cell, ',');) out.push_back(cell);
  return out;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("annealpath_cli_" + std::to_string(::getpid()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  int run(std::vector<std::string> args) {
    console_.str("");
    errors_.str("");
    return run_cli(args, console_, errors_);
  }
  std::string path(const std::string& name) const { return (root_ / name).string(); }

  // Fast settings: 50 Trotter steps, few events.
  static std::vector<std::string> quick(std::vector<std::string> args) {
    for (const char* a : {"--ta", "0.5", "--tau", "0.01", "--events", "400"}) args.emplace_back(a);
    return args;
  }

  fs::path root_;
  std::ostringstream console_;
  std::ostringstream errors_;
};

TEST_F(Cli, ListProblems) {
  ASSERT_EQ(run({"list-problems"}), 0);
  EXPECT_NE(console_.str().find("487,12,13,-13,1,-9,498"), std::string::npos);
}

TEST_F(Cli, ExportedProblemReproducesBuiltinRun) {
  ASSERT_EQ(run({"export-problem", "--problem", "487", "--out", path("487.json")}), 0);
  const std::string before = slurp(path("487.json"));
  ASSERT_EQ(run(quick({"anneal", "--problem", "487", "--seed", "5", "--out", path("builtin")})), 0);
  ASSERT_EQ(run(quick({"anneal", "--problem-file", path("487.json"), "--seed", "5", "--out", path("file")})), 0);
  EXPECT_EQ(slurp(path("builtin/report_ta0.5.json")), slurp(path("file/report_ta0.5.json")));
  EXPECT_EQ(slurp(path("builtin/events_ta0.5.csv")), slurp(path("file/events_ta0.5.csv")));
  EXPECT_EQ(slurp(path("487.json")), before);  // inputs are never modified
}

TEST_F(Cli, RerunFromEchoedConfigIsByteIdentical) {
  const std::vector<std::vector<std::string>> commands{
      quick({"anneal", "--problem", "26"}),
      quick({"sweep-offset", "--problem", "26", "--grid", "-0.1:0.1:0.1", "--jobs", "2"}),
      {"spectrum", "--problem", "301", "--grid", "11", "--levels", "3"},
      quick({"tune", "--problem", "26", "--method", "kiefer-wolfowitz", "--iterations", "2"}),
  };
  for (std::size_t i = 0; i < commands.size(); ++i) {
    const std::string first = path("first" + std::to_string(i));
    const std::string second = path("second" + std::to_string(i));
    auto args = commands[i];
    args.insert(args.end(), {"--out", first});
    ASSERT_EQ(run(args), 0) << errors_.str();
    ASSERT_EQ(run({"--config", first + "/config.json", "--out", second}), 0) << errors_.str();
    std::size_t compared = 0;
    for (const auto& entry : fs::directory_iterator(first)) {
      const auto name = entry.path().filename();
      if (name == "log.txt") continue;
      EXPECT_EQ(slurp(entry.path()), slurp(fs::path(second) / name)) << commands[i][0] << " " << name;
      ++compared;
    }
    EXPECT_GE(compared, 2U);
  }
}

TEST_F(Cli, SingleIterationTuneStartsFromZero) {
  ASSERT_EQ(run(quick({"tune", "--problem", "487", "--iterations", "1", "--out", path("t")})), 0) << errors_.str();
  const auto rows = data_rows(path("t/tuner.csv"));
  ASSERT_EQ(rows.size(), 1U);
  const auto cells = split(rows[0]);
  ASSERT_EQ(cells.size(), 3U + 24U);
  EXPECT_EQ(cells[0], "1");
  for (std::size_t q = 0; q < 12; ++q) EXPECT_EQ(cells[3 + q], "0");
  const auto traj = annealpath::trajectory_from_checkpoint(slurp(path("t/checkpoint.json")));
  EXPECT_EQ(traj.records.size(), 1U);
  EXPECT_EQ(traj.anneal_runs, 1U);
}

TEST_F(Cli, SweepBaselineRowsAgree) {
  ASSERT_EQ(run(quick({"sweep-offset", "--problem", "487", "--grid", "-0.1:0.1:0.05", "--out", path("s")})), 0)
      << errors_.str();
  const auto rows = data_rows(path("s/sweep.csv"));
  ASSERT_EQ(rows.size(), 12U * 5U);
  std::vector<std::string> baseline;
  for (const auto& row : rows) {
    const auto cells = split(row);
    if (cells[1] == "0") baseline.push_back(cells[2]);
  }
  ASSERT_EQ(baseline.size(), 12U);
  for (const auto& b : baseline) EXPECT_EQ(b, baseline.front());
  for (int q = 1; q <= 12; ++q) EXPECT_EQ(data_rows(path("s/sweep_qubit_" + std::to_string(q) + ".csv")).size(), 5U);
}

TEST_F(Cli, SpectrumFromZerothCheckpointMatchesLinearSchedule) {
  ASSERT_EQ(run(quick({"tune", "--problem", "26", "--iterations", "2", "--out", path("t")})), 0);
  const std::vector<std::string> spectrum{"spectrum", "--problem", "26", "--grid", "11", "--levels", "3"};
  auto linear = spectrum;
  linear.insert(linear.end(), {"--out", path("linear")});
  ASSERT_EQ(run(linear), 0);
  auto from_ckpt = spectrum;
  from_ckpt.insert(from_ckpt.end(),
                   {"--checkpoint", path("t/checkpoint.json"), "--iteration", "0", "--out", path("ckpt")});
  ASSERT_EQ(run(from_ckpt), 0);
  EXPECT_EQ(slurp(path("linear/spectrum.csv")), slurp(path("ckpt/spectrum.csv")));
  EXPECT_NE(console_.str().find("min_gap_GHz="), std::string::npos);
}

TEST_F(Cli, OutputsRecordUnits) {
  ASSERT_EQ(run(quick({"anneal", "--problem", "301", "--angular-factor", "1", "--out", path("a")})), 0);
  for (const char* f : {"a/summary.csv", "a/trajectory_ta0.5.csv", "a/events_ta0.5.csv"}) {
    EXPECT_EQ(slurp(path(f)).rfind("# energy_unit=GHz time_unit=ns angular_factor=1\n", 0), 0U) << f;
  }
  const auto report = nlohmann::json::parse(slurp(path("a/report_ta0.5.json")));
  EXPECT_EQ(report.at("angular_factor"), 1.0);
  EXPECT_EQ(report.at("energy_unit"), "GHz");
}

TEST_F(Cli, DefaultOutputRootFromEnvironment) {
  ::setenv("ANNEALPATH_OUTPUT_ROOT", path("root").c_str(), 1);
  const int code = run(quick({"anneal", "--problem", "301", "--seed", "3"}));
  const int again = run(quick({"anneal", "--problem", "301", "--seed", "3"}));
  ::unsetenv("ANNEALPATH_OUTPUT_ROOT");
  ASSERT_EQ(code, 0);
  ASSERT_EQ(again, 0);
  EXPECT_TRUE(fs::is_regular_file(root_ / "root/anneal-301-seed3/config.json"));
  EXPECT_TRUE(fs::is_regular_file(root_ / "root/anneal-301-seed3-2/config.json"));
}

TEST_F(Cli, UsageErrorsExitWithOne) {
  EXPECT_EQ(run({}), 1);
  EXPECT_EQ(run({"frobnicate"}), 1);
  EXPECT_EQ(run({"anneal", "--problem", "999"}), 1);
  EXPECT_EQ(run({"anneal", "--problem-file", path("missing.json")}), 1);
  EXPECT_NE(errors_.str().find("no such file"), std::string::npos);
  EXPECT_EQ(run({"anneal", "--ta", "-1"}), 1);
  EXPECT_EQ(run({"tune", "--method", "gradient"}), 1);
  EXPECT_EQ(run({"tune", "--kw-sign", "2"}), 1);
  EXPECT_EQ(run({"sweep-offset", "--grid", "-1:0:0.5"}), 1);
  EXPECT_EQ(run({"sweep-offset", "--qubit", "13"}), 1);
  EXPECT_EQ(run({"spectrum", "--levels", "1"}), 1);
  fs::create_directories(root_ / "taken");
  EXPECT_EQ(run(quick({"anneal", "--out", path("taken")})), 1);
  EXPECT_TRUE(fs::is_empty(root_ / "taken"));
  {
    std::ofstream(path("offsets.json")) << "[0.1, 0.2]";
  }
  EXPECT_EQ(run(quick({"anneal", "--offsets-file", path("offsets.json")})), 1);
  EXPECT_EQ(run({"--config", path("missing.json")}), 1);
}

TEST_F(Cli, RuntimeFailureExitsWithTwoAndLeavesNoOutput) {
  {
    std::ofstream(path("blocker")) << "a file, not a directory";
  }
  EXPECT_EQ(run(quick({"anneal", "--problem", "301", "--out", path("blocker/run")})), 2);
  EXPECT_NE(errors_.str().find("failed"), std::string::npos);
  for (const auto& entry : fs::directory_iterator(root_)) {
    EXPECT_EQ(entry.path().filename().string().find(".run.partial"), std::string::npos);
  }
}

TEST_F(Cli, OffsetsFileDrivesAnneal) {
  {
    std::ofstream out(path("offsets.json"));
    out << "{\"offsets\": [-0.2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0.3]}";
  }
  ASSERT_EQ(run(quick({"anneal", "--problem", "26", "--offsets-file", path("offsets.json"), "--out", path("o")})), 0);
  ASSERT_EQ(run(quick({"anneal", "--problem", "26", "--out", path("z")})), 0);
  EXPECT_NE(slurp(path("o/report_ta0.5.json")), slurp(path("z/report_ta0.5.json")));
}

}  // namespace
