#pragma once

#include <cstdint>

#include "annealpath/classical_analysis.hpp"
#include "annealpath/problem.hpp"
#include "annealpath/propagation.hpp"
#include "annealpath/sampler.hpp"
#include "annealpath/schedule.hpp"

namespace annealpath {

struct RunSettings {
  EvolutionConfig evolution;
  std::size_t events = kDefaultEventsPerRun;
};

struct AnnealRun {
  Trajectory trajectory;
  RunReport report;
};

/// Evolves the uniform superposition under `schedule`, then samples events
/// from the final state and derives every observable.
AnnealRun run_anneal(const ProblemInstance& problem, const ClassicalAnalysis& analysis,
                     const OffsetSchedule& schedule, const RunSettings& settings, std::uint64_t seed);

}  // namespace annealpath
