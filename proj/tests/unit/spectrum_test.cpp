#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "annealpath/builtin_problems.hpp"
#include "annealpath/classical_analysis.hpp"
#include "annealpath/eigensolver.hpp"
#include "annealpath/errors.hpp"
#include "annealpath/hamiltonian.hpp"
#include "annealpath/spectrum.hpp"
#include "annealpath/tuner.hpp"
#include "dense_oracle.hpp"

namespace {

using namespace annealpath;
using namespace annealpath::testing;

TEST(Spectrum, DriverLadderAtStart) {
  std::mt19937_64 gen(1);
  for (int n : {4, 12}) {  // dense and iterative solvers
    const auto p = n == 12 ? builtin("487") : random_problem(n, gen);
    const auto lv = levels_at(p, OffsetSchedule::linear(n, 1.0), 0.0, n + 3);
    EXPECT_NEAR(lv[0], -n, 1e-9);
    for (int m = 1; m <= n; ++m) EXPECT_NEAR(lv[static_cast<std::size_t>(m)], -n + 2, 1e-9) << "n = " << n;
    EXPECT_NEAR(lv[static_cast<std::size_t>(n + 1)], -n + 4, 1e-9);
  }
}

TEST(Spectrum, ClassicalLevelsAtEnd) {
  const auto p = builtin("487");
  auto diag = diagonal_energies(p);
  std::sort(diag.begin(), diag.end());
  const auto lv = levels_at(p, OffsetSchedule::linear(12, 5.0), 1.0, 15);
  ASSERT_EQ(lv.size(), 15U);
  for (std::size_t m = 0; m < lv.size(); ++m) EXPECT_NEAR(lv[m], diag[m], 1e-9);
  EXPECT_NEAR(lv[0], -13.0, 1e-9);
  EXPECT_NEAR(lv[14], -9.0, 1e-9);
}

TEST(Spectrum, IterativeAgreesWithDense) {
  std::mt19937_64 gen(2);
  const auto p = random_problem(10, gen, 0.8);
  std::vector<double> gammas(10);
  std::uniform_real_distribution<double> offset(-0.8, 0.8);
  for (auto& g : gammas) g = offset(gen);
  const OffsetSchedule sch(gammas, 1.0);
  SpectrumOptions iterative;
  iterative.dense_qubit_limit = 0;
  std::uniform_real_distribution<double> fraction(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double s = fraction(gen);
    const auto dense = levels_at(p, sch, s, 5);
    const auto lanczos = levels_at(p, sch, s, 5, iterative);
    for (std::size_t m = 0; m < 5; ++m) EXPECT_NEAR(lanczos[m], dense[m], 1e-8) << "s = " << s;
  }
}

TEST(Spectrum, IterativeResolvesDegenerateLevels) {
  // Twelve free spins at s = 0 give a twelvefold first-excited level.
  const ProblemInstance p(12, std::vector<double>(12, 0.0), {});
  const InstantaneousHamiltonian h(p, OffsetSchedule::linear(12, 1.0), 0.0);
  const auto r = lowest_eigenpairs_iterative(
      [&h](std::span<const double> in, std::span<double> out) { h.apply(in, out); }, h.dimension(), 14);
  ASSERT_TRUE(r.converged);
  for (int m = 1; m <= 12; ++m) EXPECT_NEAR(r.values[static_cast<std::size_t>(m)], -10.0, 1e-9);
  EXPECT_NEAR(r.values[13], -8.0, 1e-9);
  const Eigen::MatrixXd overlap = r.vectors.transpose() * r.vectors;
  EXPECT_LT((overlap - Eigen::MatrixXd::Identity(14, 14)).norm(), 1e-9);
}

TEST(Spectrum, NonConvergenceIsReported) {
  const auto p = builtin("26");
  const InstantaneousHamiltonian h(p, OffsetSchedule::linear(12, 1.0), 0.5);
  IterativeEigenOptions opts;
  opts.max_restarts = 0;
  opts.krylov_blocks = 2;
  const auto r = lowest_eigenpairs_iterative(
      [&h](std::span<const double> in, std::span<double> out) { h.apply(in, out); }, h.dimension(), 4, opts);
  EXPECT_FALSE(r.converged);
}

TEST(Spectrum, TraceInvariants) {
  std::mt19937_64 gen(3);
  const auto p = random_problem(6, gen);
  SpectrumOptions opts;
  opts.grid_points = 41;
  opts.levels = 6;
  const auto trace = spectrum_along_anneal(p, OffsetSchedule({0.2, -0.4, 0.0, 0.0, 0.6, 0.1}, 1.0), opts);
  ASSERT_EQ(trace.grid.size(), 41U);
  EXPECT_EQ(trace.grid.front(), 0.0);
  EXPECT_EQ(trace.grid.back(), 1.0);
  for (const auto& row : trace.levels) {
    ASSERT_EQ(row.size(), 6U);
    EXPECT_TRUE(std::is_sorted(row.begin(), row.end()));
  }
  EXPECT_GE(trace.min_gap.gap, 0.0);
  EXPECT_GE(trace.min_gap.s, 0.0);
  EXPECT_LE(trace.min_gap.s, 1.0);
  EXPECT_FALSE(trace.avg_energy.has_value());
}

TEST(Spectrum, GridSolvesAreIndependentOfJobCount) {
  const auto p = builtin("301");
  const auto sch = OffsetSchedule::linear(12, 1.0);
  SpectrumOptions opts;
  opts.grid_points = 9;
  opts.levels = 3;
  opts.refine = false;
  const auto serial = spectrum_along_anneal(p, sch, opts);
  EXPECT_EQ(spectrum_along_anneal(p, sch, opts).levels, serial.levels);
  opts.jobs = 3;
  const auto chunked = spectrum_along_anneal(p, sch, opts);
  for (std::size_t g = 0; g < serial.levels.size(); ++g) {
    for (std::size_t m = 0; m < 3; ++m) EXPECT_NEAR(chunked.levels[g][m], serial.levels[g][m], 1e-9);
  }
}

TEST(Spectrum, RejectsInvalidRequests) {
  const ProblemInstance p(2, {1.0, 0.5}, {});
  const auto sch = OffsetSchedule::linear(2, 1.0);
  SpectrumOptions opts;
  opts.grid_points = 1;
  EXPECT_THROW(spectrum_along_anneal(p, sch, opts), InputError);
  opts.grid_points = 5;
  opts.levels = 5;
  EXPECT_THROW(spectrum_along_anneal(p, sch, opts), InputError);
  SpectrumTrace one_level{{0.0, 1.0}, {{0.0}, {1.0}}, std::nullopt, {}};
  EXPECT_THROW(min_gap(one_level), InputError);
}

// H(s) = -(1 - s) X - s Z has eigenvalues +-sqrt((1 - s)^2 + s^2); the gap is smallest at s = 1/2.
TEST(MinGap, TwoLevelAvoidedCrossing) {
  const ProblemInstance p(1, {1.0}, {});
  const auto sch = OffsetSchedule::linear(1, 1.0);
  SpectrumOptions opts;
  opts.grid_points = 8;  // 0.5 is not a grid point
  opts.levels = 2;
  const auto trace = spectrum_along_anneal(p, sch, opts);
  EXPECT_NEAR(trace.min_gap.gap, std::sqrt(2.0), 1e-6);
  EXPECT_NEAR(trace.min_gap.s, 0.5, 1e-4);
  for (std::size_t g = 0; g < trace.grid.size(); ++g) {
    const double s = trace.grid[g];
    EXPECT_NEAR(trace.levels[g][1] - trace.levels[g][0], 2.0 * std::hypot(1.0 - s, s), 1e-12);
  }
  opts.refine = false;
  const auto coarse = spectrum_along_anneal(p, sch, opts);
  EXPECT_GT(coarse.min_gap.gap, trace.min_gap.gap);
}

TEST(PerturbativeGap, TrivialCases) {
  ClassicalAnalysis none;
  none.exact_floppy_fraction.assign(12, 0.0);
  const auto sch = OffsetSchedule::linear(12, 1.0);
  EXPECT_EQ(perturbative_gap_reduction(none, sch, 0.4), 0.0);
  ClassicalAnalysis all = none;
  all.exact_floppy_fraction.assign(12, 1.0);
  EXPECT_EQ(perturbative_gap_reduction(all, sch, 0.0), 6.0);
  EXPECT_EQ(perturbative_gap_reduction(all, sch, 1.0), 0.0);
  EXPECT_THROW(perturbative_gap_reduction(all, OffsetSchedule::linear(3, 1.0), 0.5), InputError);
}

TEST(PerturbativeGap, DecreasesAfterAFloppinessStep) {
  const auto p = builtin("487");
  const auto a = analyze(p);
  const auto linear = OffsetSchedule::linear(12, 5.0);
  const auto next = static_step_update(linear.gammas(), a.exact_floppiness, -0.02, OffsetWindow::standard());
  const auto tuned = linear.with_gammas(next);
  for (double s : {0.3, 0.5, 0.64, 0.8}) {
    EXPECT_LT(perturbative_gap_reduction(a, tuned, s), perturbative_gap_reduction(a, linear, s)) << "s = " << s;
  }
  EXPECT_DOUBLE_EQ(perturbative_gap_reduction(p, linear, 0.5), perturbative_gap_reduction(a, linear, 0.5));
}

TEST(MinGap, ContinuousInOffsets) {
  const auto p = builtin("26");
  const auto linear = OffsetSchedule::linear(12, 5.0);
  auto gammas = linear.gammas();
  gammas[4] = 1e-4;
  const auto nudged = linear.with_gammas(gammas);
  for (double s : {0.45, 0.525, 0.6}) {
    EXPECT_LT(std::abs(gap_at(p, nudged, s) - gap_at(p, linear, s)), 1e-3) << "s = " << s;
  }
}

}  // namespace
