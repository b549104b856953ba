#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "annealpath/classical_analysis.hpp"
#include "annealpath/problem.hpp"
#include "annealpath/schedule.hpp"

namespace annealpath {

struct GapPoint {
  double s = 0.0;
  double gap = 0.0;  // lambda_1 - lambda_0
};

struct SpectrumTrace {
  std::vector<double> grid;
  std::vector<std::vector<double>> levels;  // levels[g][m], ascending in m
  std::optional<std::vector<double>> avg_energy;
  GapPoint min_gap;
};

struct SpectrumOptions {
  int grid_points = 201;
  int levels = 15;
  /// Dense diagonalization up to this many qubits, block Lanczos above.
  int dense_qubit_limit = 10;
  double tolerance = 1e-10;
  /// Golden-section refinement of the minimum gap between grid points.
  bool refine = true;
  /// Grid points are split into this many contiguous chunks; inside a chunk
  /// each iterative solve starts from the previous point's Ritz vectors.
  int jobs = 1;
};

/// Lowest `options.levels` eigenvalues of H(s) on a uniform grid over [0, 1].
/// Throws RuntimeFailure naming the grid point if the iterative solver stalls.
SpectrumTrace spectrum_along_anneal(const ProblemInstance& problem, const OffsetSchedule& schedule,
                                    const SpectrumOptions& options = {});

/// Lowest `k` eigenvalues of H(s) at a single anneal fraction.
std::vector<double> levels_at(const ProblemInstance& problem, const OffsetSchedule& schedule, double s,
                              int k, const SpectrumOptions& options = {});

/// lambda_1(s) - lambda_0(s).
double gap_at(const ProblemInstance& problem, const OffsetSchedule& schedule, double s,
              const SpectrumOptions& options = {});

/// Coarse grid minimum of levels[.,1] - levels[.,0]. When `gap_function` is
/// given, the minimum is refined by golden-section search over the two grid
/// cells around it until the bracket is narrower than 1e-4.
GapPoint min_gap(const SpectrumTrace& trace,
                 const std::function<double(double)>& gap_function = nullptr);

/// First-order gap-reduction estimate 1/2 * sum_i A_i(s) F_i with per-qubit A_i.
double perturbative_gap_reduction(const ClassicalAnalysis& analysis, const OffsetSchedule& schedule,
                                  double s);
double perturbative_gap_reduction(const ProblemInstance& problem, const OffsetSchedule& schedule,
                                  double s);

}  // namespace annealpath
