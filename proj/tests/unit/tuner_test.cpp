#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "annealpath/builtin_problems.hpp"
#include "annealpath/errors.hpp"
#include "annealpath/export.hpp"
#include "annealpath/tuner.hpp"
#include "dense_oracle.hpp"

namespace {

using namespace annealpath;
using namespace annealpath::testing;

RunReport stub_report(std::size_t n) {
  RunReport r;
  r.n_events = 1;
  r.sigma_z_avg.assign(n, 1.0);
  r.floppiness.assign(n, 0.0);
  r.floppiness_empty = false;
  return r;
}

TunerConfig config_for(TunerMethod method, int iterations) {
  TunerConfig c;
  c.method = method;
  c.iterations = iterations;
  return c;
}

// A finished first iteration at the given offsets; c_1 = 1 probes outside the window.
TunerTrajectory after_first_iteration(TunerMethod method, std::vector<double> offsets) {
  TunerTrajectory t;
  t.method = method;
  t.final_offsets = std::move(offsets);
  t.records.resize(1);
  t.records[0].k = 1;
  t.records[0].offsets.assign(t.final_offsets.size(), 0.0);
  return t;
}

TEST(Tuner, ZeroFloppinessKeepsLinearSchedule) {
  const auto p = builtin("487");
  const auto traj = tune(p, 5.0, config_for(TunerMethod::floppiness, 5),
                         [](const OffsetSchedule&, std::uint64_t) { return stub_report(12); });
  ASSERT_EQ(traj.records.size(), 5U);
  for (const auto& rec : traj.records) {
    for (double g : rec.offsets) EXPECT_EQ(g, 0.0);
  }
  for (double g : traj.final_offsets) EXPECT_EQ(g, 0.0);
  EXPECT_EQ(traj.anneal_runs, 5U);
}

TEST(Tuner, SingleFloppyQubitStepsByAlphaTimesMu) {
  const auto p = builtin("487");
  const auto traj = tune(p, 5.0, config_for(TunerMethod::floppiness, 1), [](const OffsetSchedule&, std::uint64_t) {
    auto r = stub_report(12);
    r.floppiness[2] = 0.5;
    return r;
  });
  for (std::size_t q = 0; q < 12; ++q) EXPECT_DOUBLE_EQ(traj.final_offsets[q], q == 2 ? -0.01 : 0.0);
  EXPECT_FALSE(traj.records[0].flagged);
}

TEST(Tuner, EmptyManifoldHoldsOffsetsAndFlags) {
  const auto p = builtin("487");
  const auto traj = tune(p, 5.0, config_for(TunerMethod::floppiness, 3), [](const OffsetSchedule&, std::uint64_t) {
    auto r = stub_report(12);
    r.floppiness.assign(12, 0.0);
    r.floppiness_empty = true;
    return r;
  });
  for (const auto& rec : traj.records) EXPECT_TRUE(rec.flagged);
  for (double g : traj.final_offsets) EXPECT_EQ(g, 0.0);
}

TEST(Tuner, FloppinessOffsetsNeverIncrease) {
  const auto p = builtin("26");
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> mu(0.0, 0.5);
  const auto traj = tune(p, 5.0, config_for(TunerMethod::floppiness, 60), [&](const OffsetSchedule&, std::uint64_t) {
    auto r = stub_report(12);
    for (auto& m : r.floppiness) m = mu(gen);
    return r;
  });
  auto previous = traj.offsets_after(0);
  for (int k = 1; k <= 60; ++k) {
    const auto current = traj.offsets_after(k);
    for (std::size_t q = 0; q < 12; ++q) {
      EXPECT_LE(current[q], previous[q]);
      EXPECT_GT(current[q], -0.95);
    }
    previous = current;
  }
}

TEST(Tuner, SigmaAverage) {
  const auto p = builtin("301");
  const auto polarized = tune(p, 5.0, config_for(TunerMethod::sigma_average, 4),
                              [](const OffsetSchedule&, std::uint64_t) { return stub_report(12); });
  for (double g : polarized.final_offsets) EXPECT_EQ(g, 0.0);

  const auto traj = tune(p, 5.0, config_for(TunerMethod::sigma_average, 5), [](const OffsetSchedule&, std::uint64_t) {
    auto r = stub_report(12);
    r.sigma_z_avg[4] = 0.0;
    r.sigma_z_avg[7] = -1.0;
    return r;
  });
  for (int k = 0; k <= 5; ++k) {
    const auto g = traj.offsets_after(k);
    EXPECT_NEAR(g[4], -0.02 * k, 1e-12);
    EXPECT_EQ(g[7], 0.0);
  }
}

TEST(KieferWolfowitz, Gains) {
  const auto c = config_for(TunerMethod::kiefer_wolfowitz, 1);
  EXPECT_EQ(kw_gains(c, 1), (std::pair<double, double>{1.0, 1.0}));
  const auto [a8, c8] = kw_gains(c, 8);
  EXPECT_DOUBLE_EQ(a8, 0.125);
  EXPECT_DOUBLE_EQ(c8, 0.5);
  EXPECT_THROW(kw_gains(c, 0), InputError);
}

TEST(KieferWolfowitz, SymmetricResponseGivesNoUpdate) {
  const auto p = builtin("26");
  const auto start = after_first_iteration(TunerMethod::kiefer_wolfowitz, std::vector<double>(12, 0.0));
  const auto traj = tune(p, 5.0, config_for(TunerMethod::kiefer_wolfowitz, 4),
                         [](const OffsetSchedule& sch, std::uint64_t) {
                           auto r = stub_report(12);
                           for (double g : sch.gammas()) r.final_avg_energy += g * g;
                           return r;
                         },
                         &start);
  for (std::size_t k = 1; k < traj.records.size(); ++k) {
    EXPECT_FALSE(traj.records[k].flagged);
    for (double s : traj.records[k].statistic) EXPECT_NEAR(s, 0.0, 1e-12);
  }
  for (double g : traj.final_offsets) EXPECT_NEAR(g, 0.0, 1e-12);
}

TEST(KieferWolfowitz, RunCountAndProbeLayout) {
  const auto p = builtin("26");
  const int m = 4;
  std::size_t calls = 0;
  const auto traj = tune(p, 5.0, config_for(TunerMethod::kiefer_wolfowitz, m), [&](const OffsetSchedule&, std::uint64_t) {
    ++calls;
    return stub_report(12);
  });
  EXPECT_EQ(traj.anneal_runs, static_cast<std::size_t>(2 * 12 * m));
  EXPECT_EQ(calls, traj.anneal_runs);
  for (const auto& rec : traj.records) {
    ASSERT_EQ(rec.probes.size(), 24U);
    const double c_k = std::pow(rec.k, -1.0 / 3.0);
    for (std::size_t i = 0; i < rec.probes.size(); ++i) {
      const auto& pr = rec.probes[i];
      EXPECT_EQ(pr.qubit, static_cast<int>(i / 2));
      EXPECT_EQ(pr.direction, i % 2 == 0 ? 1 : -1);
      if (rec.k == 1 && pr.direction < 0) {
        EXPECT_TRUE(pr.clamped);
        EXPECT_EQ(pr.offset, OffsetWindow::standard().clamp(-1.0));
      } else {
        EXPECT_FALSE(pr.clamped);
        EXPECT_DOUBLE_EQ(pr.offset, pr.direction * c_k);
      }
    }
    EXPECT_EQ(rec.flagged, rec.k == 1);
  }
}

TEST(KieferWolfowitz, LinearResponseRecoversSlopeThroughClampedProbes) {
  const auto p = builtin("26");
  auto config = config_for(TunerMethod::kiefer_wolfowitz, 1);
  config.kw_sign = +1.0;
  // Start against the upper bound so the + probe of qubit 0 is clamped.
  std::vector<double> offsets(12, 0.0);
  offsets[0] = 0.9;
  const auto start = after_first_iteration(TunerMethod::kiefer_wolfowitz, offsets);
  config.iterations = 2;
  const auto traj = tune(p, 5.0, config,
                         [](const OffsetSchedule& sch, std::uint64_t) {
                           auto r = stub_report(12);
                           for (double g : sch.gammas()) r.final_avg_energy += g;
                           return r;
                         },
                         &start);
  const auto& rec = traj.records.back();
  EXPECT_EQ(rec.k, 2);
  EXPECT_TRUE(rec.probes[0].clamped);
  EXPECT_FALSE(rec.probes[1].clamped);
  EXPECT_TRUE(rec.flagged);
  for (double s : rec.statistic) EXPECT_NEAR(s, 1.0, 1e-12);
  EXPECT_EQ(traj.final_offsets[0], 1.0);
  EXPECT_NEAR(traj.final_offsets[1], 0.5, 1e-12);  // alpha_2 * slope
}

TEST(KieferWolfowitz, PerIterationObservablesAreProbeMeans) {
  const auto p = builtin("26");
  const auto traj = tune(p, 5.0, config_for(TunerMethod::kiefer_wolfowitz, 1),
                         [](const OffsetSchedule& sch, std::uint64_t) {
                           auto r = stub_report(12);
                           r.success_probability = sch.gammas()[0] > 0.0 ? 1.0 : 0.0;
                           return r;
                         });
  EXPECT_DOUBLE_EQ(traj.records[0].success_probability, 1.0 / 24.0);
}

TEST(Tuner, RejectsInconsistentRequests) {
  const auto p = builtin("26");
  auto c = config_for(TunerMethod::floppiness, 0);
  EXPECT_THROW(tune(p, 1.0, c), InputError);
  c.iterations = 1;
  EXPECT_THROW(tune(p, 0.0, c), InputError);
  EXPECT_THROW(tune_sigma_average(p, 1.0, c), InputError);
  auto kw = config_for(TunerMethod::kiefer_wolfowitz, 1);
  kw.kw_sign = 0.5;
  EXPECT_THROW(tune(p, 1.0, kw), InputError);
  TunerTrajectory other;
  other.method = TunerMethod::sigma_average;
  other.final_offsets.assign(12, 0.0);
  EXPECT_THROW(tune(p, 1.0, c, {}, &other), InputError);
  EXPECT_THROW(parse_tuner_method("gradient"), InputError);
  EXPECT_EQ(parse_tuner_method(to_string(TunerMethod::kiefer_wolfowitz)), TunerMethod::kiefer_wolfowitz);
}

void expect_same_path(const TunerTrajectory& a, const TunerTrajectory& b) {
  ASSERT_EQ(a.records.size(), b.records.size());
  EXPECT_EQ(a.anneal_runs, b.anneal_runs);
  EXPECT_EQ(a.final_offsets, b.final_offsets);
  for (std::size_t k = 0; k < a.records.size(); ++k) {
    EXPECT_EQ(a.records[k].k, b.records[k].k);
    EXPECT_EQ(a.records[k].offsets, b.records[k].offsets);
    EXPECT_EQ(a.records[k].statistic, b.records[k].statistic);
    EXPECT_EQ(a.records[k].success_probability, b.records[k].success_probability);
    EXPECT_EQ(a.records[k].final_avg_energy, b.records[k].final_avg_energy);
  }
}

class RealRunTuner : public ::testing::TestWithParam<TunerMethod> {
 protected:
  static ProblemInstance problem() {
    std::mt19937_64 gen(11);
    return random_problem(4, gen);
  }
};

TEST_P(RealRunTuner, DeterministicAndResumable) {
  const auto p = problem();
  auto config = config_for(GetParam(), 4);
  config.events_per_run = 500;
  config.evolution.time_step = 1e-3;
  config.master_seed = 17;
  const auto full = tune(p, 1.0, config);
  expect_same_path(full, tune(p, 1.0, config));

  auto first = config;
  first.iterations = 2;
  const auto head = tune(p, 1.0, first);
  expect_same_path(full, tune(p, 1.0, config, {}, &head));

  const auto restored = trajectory_from_checkpoint(trajectory_to_checkpoint(head));
  expect_same_path(full, tune(p, 1.0, config, {}, &restored));
}

INSTANTIATE_TEST_SUITE_P(Methods, RealRunTuner,
                         ::testing::Values(TunerMethod::floppiness, TunerMethod::sigma_average,
                                           TunerMethod::kiefer_wolfowitz),
                         [](const auto& info) {
                           switch (info.param) {
                             case TunerMethod::floppiness: return std::string("Floppiness");
                             case TunerMethod::sigma_average: return std::string("SigmaAverage");
                             default: return std::string("KieferWolfowitz");
                           }
                         });

TEST(Tuner, SpectrumRecordedAtRequestedIterations) {
  std::mt19937_64 gen(12);
  const auto p = random_problem(4, gen);
  auto config = config_for(TunerMethod::floppiness, 3);
  config.events_per_run = 200;
  config.evolution.time_step = 1e-3;
  config.evolution.record_stride = 50;  // 1000 steps, so s lands on a 21-point grid
  config.spectrum_iterations = {1, 3};
  config.spectrum.grid_points = 21;
  config.spectrum.levels = 3;
  const auto traj = tune(p, 1.0, config);
  EXPECT_TRUE(traj.records[0].spectrum.has_value());
  EXPECT_FALSE(traj.records[1].spectrum.has_value());
  ASSERT_TRUE(traj.records[2].spectrum.has_value());
  const auto& trace = *traj.records[2].spectrum;
  ASSERT_TRUE(trace.avg_energy.has_value());
  for (std::size_t g = 0; g < trace.grid.size(); ++g) EXPECT_GE((*trace.avg_energy)[g], trace.levels[g][0] - 1e-9);
}

}  // namespace
