#pragma once

#include <vector>

#include "annealpath/problem.hpp"

namespace annealpath {

/// Levels are grouped with this absolute tolerance.
inline constexpr double kLevelTolerance = 1e-9;

/// Exhaustive description of the two lowest levels of H_P.
struct ClassicalAnalysis {
  double ground_energy = 0.0;
  std::vector<BasisIndex> ground_states;
  double first_excited_energy = 0.0;
  std::vector<BasisIndex> first_excited_states;
  /// F_i: fraction of first-excited states whose qubit-i flip stays first-excited.
  std::vector<double> exact_floppy_fraction;
  /// mu_i = F_i / 2 (each floppy pair is counted once per member).
  std::vector<double> exact_floppiness;

  bool is_ground(BasisIndex state) const;
  bool is_first_excited(BasisIndex state) const;
};

/// Enumerates all 2^N basis states. Throws InputError when every state has the
/// same energy (there is no first-excited level).
ClassicalAnalysis analyze(const ProblemInstance& problem);

}  // namespace annealpath
