#include "annealpath/anneal_run.hpp"

namespace annealpath {

AnnealRun run_anneal(const ProblemInstance& problem, const ClassicalAnalysis& analysis,
                     const OffsetSchedule& schedule, const RunSettings& settings, std::uint64_t seed) {
  Trajectory traj = evolve(problem, schedule, settings.evolution, initial_state(problem.n_qubits()),
                           analysis.ground_states);
  RunReport report = make_run_report(traj.final_state, problem, analysis, settings.events, seed);
  report.trajectory = traj.points;
  return {std::move(traj), std::move(report)};
}

}  // namespace annealpath
