#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "annealpath/builtin_problems.hpp"
#include "annealpath/errors.hpp"
#include "annealpath/export.hpp"
#include "json.hpp"

namespace {

using namespace annealpath;

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(Export, UnitsComment) {
  EXPECT_EQ(units_comment(OutputUnits{}).rfind("# energy_unit=GHz time_unit=ns angular_factor=6.28318530717958", 0),
            0U);
  EXPECT_EQ(units_comment(OutputUnits{1.0}), "# energy_unit=GHz time_unit=ns angular_factor=1");
}

TEST(Export, TrajectoryCsv) {
  std::ostringstream out;
  const std::vector<TrajectoryPoint> points{{0.0, -12.0, 1.0 / 4096.0}, {1.0, -9.5, 0.25}};
  write_trajectory_csv(out, points, OutputUnits{1.0});
  const auto lines = lines_of(out.str());
  ASSERT_EQ(lines.size(), 4U);
  EXPECT_EQ(lines[1], "s,avg_energy_GHz,ground_population");
  EXPECT_EQ(lines[2], "0,-12,0.000244140625");
  EXPECT_EQ(lines[3], "1,-9.5,0.25");
}

TEST(Export, SpectrumCsv) {
  SpectrumTrace trace{{0.0, 1.0}, {{-2.0, 0.0}, {-1.0, 1.0}}, std::vector<double>{-1.5, -0.5}, {}};
  std::ostringstream out;
  write_spectrum_csv(out, trace, OutputUnits{});
  auto lines = lines_of(out.str());
  ASSERT_EQ(lines.size(), 4U);
  EXPECT_EQ(lines[1], "s,level_0_GHz,level_1_GHz,avg_energy_GHz");
  EXPECT_EQ(lines[3], "1,-1,1,-0.5");
  trace.avg_energy.reset();
  std::ostringstream bare;
  write_spectrum_csv(bare, trace, OutputUnits{});
  lines = lines_of(bare.str());
  EXPECT_EQ(lines[1], "s,level_0_GHz,level_1_GHz");
  EXPECT_EQ(lines[2], "0,-2,0");
}

TEST(Export, EventsAreAggregatedInBasisOrder) {
  const ProblemInstance p(3, {1.0, 0.0, 0.0}, {{0, 1, 1.0}});
  std::ostringstream out;
  const std::vector<BasisIndex> events{5, 0, 5, 1, 5};
  write_events_csv(out, events, p, OutputUnits{});
  const auto lines = lines_of(out.str());
  ASSERT_EQ(lines.size(), 5U);
  EXPECT_EQ(lines[1], "bitstring,energy_GHz,count");
  EXPECT_EQ(lines[2], format_bits(0, 3) + ",-2,1");
  EXPECT_EQ(lines[3], format_bits(1, 3) + ",2,1");
  EXPECT_EQ(lines[4], format_bits(5, 3) + ",2,3");
}

TEST(Export, TunerCsv) {
  TunerTrajectory t;
  t.final_offsets = {-0.02, 0.0};
  TunerRecord r;
  r.k = 1;
  r.offsets = {0.0, 0.0};
  r.success_probability = 0.5;
  r.final_avg_energy = -3.0;
  r.floppiness = {0.5, 0.0};
  t.records.push_back(r);
  std::ostringstream out;
  write_tuner_csv(out, t, OutputUnits{});
  const auto lines = lines_of(out.str());
  ASSERT_EQ(lines.size(), 3U);
  EXPECT_EQ(lines[1], "k,success_probability,final_avg_energy_GHz,gamma_1,gamma_2,mu_1,mu_2");
  EXPECT_EQ(lines[2], "1,0.5,-3,0,0,0.5,0");
}

TEST(Export, ReportDocument) {
  RunReport r;
  r.seed = 7;
  r.n_events = 3;
  r.success_probability = 0.25;
  r.sigma_z_avg = {1.0, -1.0};
  const auto doc = nlohmann::json::parse(report_to_document(r, builtin("26"), OutputUnits{}));
  EXPECT_EQ(doc.at("problem"), "26");
  EXPECT_EQ(doc.at("energy_unit"), "GHz");
  EXPECT_EQ(doc.at("seed"), 7);
  EXPECT_EQ(doc.at("success_probability"), 0.25);
  EXPECT_EQ(doc.at("sigma_z_avg"), nlohmann::json({1.0, -1.0}));
}

TEST(Checkpoint, RoundTripKeepsEveryResumedField) {
  TunerTrajectory t;
  t.method = TunerMethod::kiefer_wolfowitz;
  t.anneal_runs = 4;
  t.final_offsets = {0.1 / 3.0, -0.7};
  TunerRecord r;
  r.k = 1;
  r.offsets = {0.0, 0.0};
  r.success_probability = 0.123456789012345678;
  r.final_avg_energy = -8.25;
  r.floppiness = {0.5, 0.25};
  r.statistic = {1e-17, -3.0};
  r.flagged = true;
  for (int p = 0; p < 4; ++p) {
    ProbeRecord pr;
    pr.qubit = p / 2;
    pr.direction = p % 2 == 0 ? 1 : -1;
    pr.offset = pr.direction * 0.9;
    pr.clamped = p == 1;
    pr.report.seed = 100U + static_cast<std::uint64_t>(p);
    pr.report.final_avg_energy = -p;
    r.probes.push_back(pr);
  }
  r.spectrum = SpectrumTrace{{0.0, 1.0}, {{-1.0, 0.0}, {-1.0, 0.0}}, std::nullopt, {0.64, 0.03}};
  t.records.push_back(r);

  const auto back = trajectory_from_checkpoint(trajectory_to_checkpoint(t));
  EXPECT_EQ(back.method, t.method);
  EXPECT_EQ(back.anneal_runs, 4U);
  EXPECT_EQ(back.final_offsets, t.final_offsets);
  ASSERT_EQ(back.records.size(), 1U);
  const auto& b = back.records[0];
  EXPECT_EQ(b.offsets, r.offsets);
  EXPECT_EQ(b.success_probability, r.success_probability);
  EXPECT_EQ(b.statistic, r.statistic);
  EXPECT_TRUE(b.flagged);
  ASSERT_EQ(b.probes.size(), 4U);
  EXPECT_TRUE(b.probes[1].clamped);
  EXPECT_EQ(b.probes[3].report.seed, 103U);
  EXPECT_EQ(b.probes[3].report.final_avg_energy, -3.0);
  EXPECT_EQ(trajectory_to_checkpoint(back).find("\"min_gap\""), std::string::npos);
  EXPECT_NE(trajectory_to_checkpoint(t).find("\"min_gap\""), std::string::npos);
}

TEST(Checkpoint, MalformedInputThrows) {
  EXPECT_THROW(trajectory_from_checkpoint("not json"), InputError);
  EXPECT_THROW(trajectory_from_checkpoint("{}"), InputError);
  EXPECT_THROW(trajectory_from_checkpoint(R"({"method":"annealing","anneal_runs":0,"final_offsets":[],"records":[]})"),
               InputError);
}

}  // namespace
