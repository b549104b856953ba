#include "annealpath/classical_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "annealpath/errors.hpp"

namespace annealpath {

bool ClassicalAnalysis::is_ground(BasisIndex state) const {
  return std::binary_search(ground_states.begin(), ground_states.end(), state);
}

bool ClassicalAnalysis::is_first_excited(BasisIndex state) const {
  return std::binary_search(first_excited_states.begin(), first_excited_states.end(), state);
}

ClassicalAnalysis analyze(const ProblemInstance& problem) {
  const int n = problem.n_qubits();
  const std::vector<double> energies = diagonal_energies(problem);

  const double ground = *std::min_element(energies.begin(), energies.end());
  double excited = std::numeric_limits<double>::infinity();
  for (double e : energies) {
    if (e > ground + kLevelTolerance) excited = std::min(excited, e);
  }
  if (!std::isfinite(excited)) {
    throw InputError("problem '" + problem.label() + "' has a single energy level");
  }

  ClassicalAnalysis out;
  out.ground_energy = ground;
  out.first_excited_energy = excited;
  for (std::size_t x = 0; x < energies.size(); ++x) {
    if (std::abs(energies[x] - ground) <= kLevelTolerance) {
      out.ground_states.push_back(static_cast<BasisIndex>(x));
    } else if (std::abs(energies[x] - excited) <= kLevelTolerance) {
      out.first_excited_states.push_back(static_cast<BasisIndex>(x));
    }
  }

  out.exact_floppy_fraction.assign(static_cast<std::size_t>(n), 0.0);
  for (BasisIndex z : out.first_excited_states) {
    for (int q = 0; q < n; ++q) {
      if (std::abs(energies[flip(z, q)] - excited) <= kLevelTolerance) {
        out.exact_floppy_fraction[static_cast<std::size_t>(q)] += 1.0;
      }
    }
  }
  const double count = static_cast<double>(out.first_excited_states.size());
  out.exact_floppiness.resize(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) {
    auto& f = out.exact_floppy_fraction[static_cast<std::size_t>(q)];
    f /= count;
    out.exact_floppiness[static_cast<std::size_t>(q)] = 0.5 * f;
  }
  return out;
}

}  // namespace annealpath
