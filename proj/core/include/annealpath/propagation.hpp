#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

#include "annealpath/problem.hpp"
#include "annealpath/schedule.hpp"
#include "annealpath/state.hpp"

namespace annealpath {

enum class Propagator {
  suzuki_trotter_2,  // symmetric single-site / zz / single-site splitting
  exact_midpoint,    // exp(-i w tau H(t + tau/2)) to machine precision
};

std::string_view to_string(Propagator p);
Propagator parse_propagator(std::string_view text);

/// Default phase convention: energies in GHz, times in ns, phase 2*pi*E*t.
inline constexpr double kDefaultAngularFactor = 2.0 * std::numbers::pi;

/// min(t_a / 10000, 1e-3 ns).
double default_time_step(double anneal_time);

struct EvolutionConfig {
  double time_step = 0.0;  // ns; <= 0 selects default_time_step(t_a)
  Propagator propagator = Propagator::suzuki_trotter_2;
  double angular_factor = kDefaultAngularFactor;
  std::size_t record_stride = 0;  // 0 records only the endpoints
};

struct TrajectoryPoint {
  double s = 0.0;
  double avg_energy = 0.0;         // <psi|H(s)|psi>
  double ground_population = 0.0;  // population on the supplied ground manifold
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  QuantumState final_state;
  std::size_t steps = 0;
  double time_step = 0.0;  // actual tau = t_a / steps
};

/// Number of steps round(t_a / tau); throws InputError if tau > t_a or tau <= 0.
std::size_t step_count(double anneal_time, double time_step);

/// Integrates the TDSE from s = 0 to 1. `ground_states` selects which basis
/// states count toward ground_population in the recorded points.
Trajectory evolve(const ProblemInstance& problem, const OffsetSchedule& schedule,
                  const EvolutionConfig& config, QuantumState state,
                  std::span<const BasisIndex> ground_states = {});

/// One second-order Suzuki-Trotter step evaluated at anneal fraction s_mid:
///   prod_j e^{i w tau [A_j X_j + B_j C h_j Z_j] / 2}
///   * prod_{j<k} e^{i w tau sqrt(B_j B_k) C J_jk Z_j Z_k}
///   * prod_j e^{i w tau [A_j X_j + B_j C h_j Z_j] / 2}.
void apply_trotter_step(const ProblemInstance& problem, const OffsetSchedule& schedule, double s_mid,
                        double tau, QuantumState& state,
                        double angular_factor = kDefaultAngularFactor);

/// exp(-i w tau H(s_mid)) applied exactly (dense for tiny systems, Krylov otherwise).
void apply_exact_midpoint_step(const ProblemInstance& problem, const OffsetSchedule& schedule,
                               double s_mid, double tau, QuantumState& state,
                               double angular_factor = kDefaultAngularFactor);

}  // namespace annealpath
