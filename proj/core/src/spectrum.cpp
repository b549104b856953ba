#include "annealpath/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "annealpath/eigensolver.hpp"
#include "annealpath/errors.hpp"
#include "annealpath/hamiltonian.hpp"
#include "annealpath/parallel.hpp"
#include "annealpath/rng.hpp"

namespace annealpath {

namespace {

std::vector<double> solve_levels(const ProblemInstance& problem, const OffsetSchedule& schedule, double s,
                                 int k, const SpectrumOptions& options, std::uint64_t seed,
                                 Eigen::MatrixXd* warm = nullptr) {
  const InstantaneousHamiltonian h(problem, schedule, s);
  if (problem.n_qubits() <= options.dense_qubit_limit) {
    return lowest_eigenpairs_dense(h.dense(), k).values;
  }
  IterativeEigenOptions eo;
  eo.tolerance = options.tolerance;
  eo.seed = seed;
  if (warm != nullptr) eo.start = std::move(*warm);
  const EigenResult r = lowest_eigenpairs_iterative(
      [&h](std::span<const double> in, std::span<double> out) { h.apply(in, out); }, h.dimension(), k, eo);
  if (!r.converged) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "eigensolver did not converge at s = " << s << " after " << r.restarts << " restarts";
    throw RuntimeFailure(msg.str());
  }
  if (warm != nullptr) *warm = r.ritz_block;
  return r.values;
}

}  // namespace

std::vector<double> levels_at(const ProblemInstance& problem, const OffsetSchedule& schedule, double s,
                              int k, const SpectrumOptions& options) {
  if (k < 1 || static_cast<std::size_t>(k) > problem.dimension()) {
    throw InputError("level count must be in 1..2^N");
  }
  return solve_levels(problem, schedule, s, k, options, derive_seed(0x5eedULL, 0));
}

double gap_at(const ProblemInstance& problem, const OffsetSchedule& schedule, double s,
              const SpectrumOptions& options) {
  const auto lv = levels_at(problem, schedule, s, 2, options);
  return lv[1] - lv[0];
}

SpectrumTrace spectrum_along_anneal(const ProblemInstance& problem, const OffsetSchedule& schedule,
                                    const SpectrumOptions& options) {
  if (options.grid_points < 2) throw InputError("spectrum grid needs at least 2 points");
  if (options.levels < 1 || static_cast<std::size_t>(options.levels) > problem.dimension()) {
    throw InputError("level count must be in 1..2^N");
  }
  if (schedule.n_qubits() != problem.n_qubits()) {
    throw InputError("schedule and problem disagree on the qubit count");
  }
  SpectrumTrace trace;
  const auto g = static_cast<std::size_t>(options.grid_points);
  trace.grid.resize(g);
  for (std::size_t i = 0; i < g; ++i) trace.grid[i] = static_cast<double>(i) / static_cast<double>(g - 1);
  trace.levels.resize(g);
  const std::size_t chunks = std::min<std::size_t>(g, static_cast<std::size_t>(resolve_jobs(options.jobs)));
  parallel_for(chunks, options.jobs, [&](std::size_t c) {
    Eigen::MatrixXd warm;
    for (std::size_t i = c * g / chunks; i < (c + 1) * g / chunks; ++i) {
      trace.levels[i] = solve_levels(problem, schedule, trace.grid[i], options.levels, options,
                                     derive_seed(0x5eedULL, i), &warm);
    }
  });
  if (options.levels >= 2) {
    if (options.refine) {
      trace.min_gap = min_gap(trace, [&](double s) { return gap_at(problem, schedule, s, options); });
    } else {
      trace.min_gap = min_gap(trace);
    }
  }
  return trace;
}

GapPoint min_gap(const SpectrumTrace& trace, const std::function<double(double)>& gap_function) {
  if (trace.grid.empty() || trace.levels.empty() || trace.levels.front().size() < 2) {
    throw InputError("min_gap needs a trace with at least two levels");
  }
  std::size_t best = 0;
  double best_gap = trace.levels[0][1] - trace.levels[0][0];
  for (std::size_t i = 1; i < trace.grid.size(); ++i) {
    const double gap = trace.levels[i][1] - trace.levels[i][0];
    if (gap < best_gap) {
      best_gap = gap;
      best = i;
    }
  }
  GapPoint coarse{trace.grid[best], std::max(0.0, best_gap)};
  if (!gap_function) return coarse;

  double lo = trace.grid[best > 0 ? best - 1 : 0];
  double hi = trace.grid[std::min(best + 1, trace.grid.size() - 1)];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = gap_function(x1);
  double f2 = gap_function(x2);
  while (hi - lo > 1e-4) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = gap_function(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = gap_function(x2);
    }
  }
  GapPoint refined = f1 < f2 ? GapPoint{x1, f1} : GapPoint{x2, f2};
  if (coarse.gap < refined.gap) return coarse;
  refined.gap = std::max(0.0, refined.gap);
  return refined;
}

double perturbative_gap_reduction(const ClassicalAnalysis& analysis, const OffsetSchedule& schedule,
                                  double s) {
  if (static_cast<int>(analysis.exact_floppy_fraction.size()) != schedule.n_qubits()) {
    throw InputError("analysis and schedule disagree on the qubit count");
  }
  double sum = 0.0;
  for (int q = 0; q < schedule.n_qubits(); ++q) {
    sum += schedule.eval_a(q, s) * analysis.exact_floppy_fraction[static_cast<std::size_t>(q)];
  }
  return 0.5 * sum;
}

double perturbative_gap_reduction(const ProblemInstance& problem, const OffsetSchedule& schedule,
                                  double s) {
  return perturbative_gap_reduction(analyze(problem), schedule, s);
}

}  // namespace annealpath
