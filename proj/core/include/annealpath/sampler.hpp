#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "annealpath/classical_analysis.hpp"
#include "annealpath/problem.hpp"
#include "annealpath/propagation.hpp"
#include "annealpath/state.hpp"

namespace annealpath {

inline constexpr std::size_t kDefaultEventsPerRun = 10000;

/// n i.i.d. basis-state draws from |amplitude|^2 by inverse-CDF lookup on a
/// CounterRng stream; identical (state, n, seed) give identical events.
std::vector<BasisIndex> sample_events(const QuantumState& state, std::size_t n, std::uint64_t seed);

/// Population on the ground manifold.
double success_probability(const QuantumState& state, const ClassicalAnalysis& analysis);

struct EventObservables {
  std::vector<double> sigma_z_avg;  // mean spin per qubit
  double final_avg_energy = 0.0;    // mean classical energy
};

/// Throws InputError on an empty event list.
EventObservables observables_from_events(std::span<const BasisIndex> events, const ProblemInstance& problem);

/// The same quantities as expectation values over the final state.
EventObservables exact_observables(const QuantumState& state, const ProblemInstance& problem);

struct FloppinessEstimate {
  std::vector<double> mu;            // in [0, 0.5]
  std::size_t manifold_events = 0;   // events at the first-excited level
  bool empty_manifold = true;        // no event at that level; mu is all zero
  double level = 0.0;                // first-excited energy used for the restriction
};

/// Among events at the known first-excited energy (tolerance 1e-9), mu_i is the
/// count of events whose qubit-i flip keeps the energy, divided by twice the
/// number of such events.
FloppinessEstimate empirical_floppiness(std::span<const BasisIndex> events, const ProblemInstance& problem,
                                        const ClassicalAnalysis& analysis);

/// Fallback for problems without an enumerated spectrum: the first-excited level
/// is taken as the second-lowest distinct energy among the events.
FloppinessEstimate empirical_floppiness_estimated(std::span<const BasisIndex> events,
                                                  const ProblemInstance& problem);

/// Population-weighted floppy fraction over the first-excited manifold, halved.
/// The infinite-event limit of empirical_floppiness.
FloppinessEstimate amplitude_floppiness(const QuantumState& state, const ProblemInstance& problem,
                                        const ClassicalAnalysis& analysis);

struct RunReport {
  std::vector<BasisIndex> events;
  std::size_t n_events = 0;
  double success_probability = 0.0;  // exact, from amplitudes
  double empirical_success = 0.0;    // fraction of events in the ground manifold
  std::vector<double> sigma_z_avg;   // from events
  double final_avg_energy = 0.0;     // from events
  std::vector<double> floppiness;    // mu_i from events
  bool floppiness_empty = true;
  std::size_t first_excited_events = 0;
  double exact_avg_energy = 0.0;     // <H_P> over the final state
  std::vector<double> exact_floppiness;  // amplitude_floppiness mu
  std::vector<TrajectoryPoint> trajectory;  // filled by run_anneal
  std::uint64_t seed = 0;
};

RunReport make_run_report(const QuantumState& final_state, const ProblemInstance& problem,
                          const ClassicalAnalysis& analysis, std::size_t n_events, std::uint64_t seed);

}  // namespace annealpath
