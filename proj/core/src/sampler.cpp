#include "annealpath/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "annealpath/errors.hpp"
#include "annealpath/rng.hpp"

namespace annealpath {

std::vector<BasisIndex> sample_events(const QuantumState& state, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InputError("event count must be at least 1");
  std::vector<double> cdf(state.dimension());
  double total = 0.0;
  for (std::size_t i = 0; i < cdf.size(); ++i) {
    total += state.probability(i);
    cdf[i] = total;
  }
  if (!(total > 0.0)) throw InputError("cannot sample from a zero state");

  CounterRng rng(seed);
  std::vector<BasisIndex> events(n);
  for (auto& e : events) {
    const double u = rng.uniform() * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    // Skip zero-probability entries that share the cumulative value.
    auto idx = static_cast<std::size_t>(it - cdf.begin());
    while (state.probability(idx) == 0.0 && idx + 1 < cdf.size()) ++idx;
    e = static_cast<BasisIndex>(idx);
  }
  return events;
}

double success_probability(const QuantumState& state, const ClassicalAnalysis& analysis) {
  double p = 0.0;
  for (BasisIndex z : analysis.ground_states) {
    if (z >= state.dimension()) throw InputError("analysis does not match the state dimension");
    p += state.probability(z);
  }
  return p;
}

EventObservables observables_from_events(std::span<const BasisIndex> events, const ProblemInstance& problem) {
  if (events.empty()) throw InputError("observables need at least one event");
  const int n = problem.n_qubits();
  EventObservables out;
  out.sigma_z_avg.assign(static_cast<std::size_t>(n), 0.0);
  for (BasisIndex z : events) {
    for (int q = 0; q < n; ++q) out.sigma_z_avg[static_cast<std::size_t>(q)] += spin_of(z, q);
    out.final_avg_energy += classical_energy(problem, z);
  }
  const double count = static_cast<double>(events.size());
  for (double& v : out.sigma_z_avg) v /= count;
  out.final_avg_energy /= count;
  return out;
}

EventObservables exact_observables(const QuantumState& state, const ProblemInstance& problem) {
  if (state.n_qubits() != problem.n_qubits()) throw InputError("state dimension does not match problem");
  const int n = problem.n_qubits();
  const auto energies = diagonal_energies(problem);
  EventObservables out;
  out.sigma_z_avg.assign(static_cast<std::size_t>(n), 0.0);
  for (std::size_t x = 0; x < state.dimension(); ++x) {
    const double p = state.probability(x);
    if (p == 0.0) continue;
    for (int q = 0; q < n; ++q) {
      out.sigma_z_avg[static_cast<std::size_t>(q)] += p * spin_of(static_cast<BasisIndex>(x), q);
    }
    out.final_avg_energy += p * energies[x];
  }
  return out;
}

namespace {

bool same_level(double a, double b) { return std::abs(a - b) <= kLevelTolerance; }

// Weighted floppy counts over states at `level`; weight(z) is an event count or a population.
template <typename Range, typename Weight>
FloppinessEstimate floppy_pairs(const Range& states, Weight weight, const ProblemInstance& problem, double level) {
  const int n = problem.n_qubits();
  FloppinessEstimate out;
  out.level = level;
  out.mu.assign(static_cast<std::size_t>(n), 0.0);
  double total = 0.0;
  for (BasisIndex z : states) {
    const double e = classical_energy(problem, z);
    if (!same_level(e, level)) continue;
    const double w = weight(z);
    if (w == 0.0) continue;
    ++out.manifold_events;
    total += w;
    for (int q = 0; q < n; ++q) {
      if (same_level(classical_energy(problem, flip(z, q)), e)) out.mu[static_cast<std::size_t>(q)] += w;
    }
  }
  out.empty_manifold = total == 0.0;
  if (!out.empty_manifold) {
    for (double& m : out.mu) m /= 2.0 * total;
  }
  return out;
}

}  // namespace

FloppinessEstimate empirical_floppiness(std::span<const BasisIndex> events, const ProblemInstance& problem,
                                        const ClassicalAnalysis& analysis) {
  return floppy_pairs(events, [](BasisIndex) { return 1.0; }, problem, analysis.first_excited_energy);
}

FloppinessEstimate empirical_floppiness_estimated(std::span<const BasisIndex> events,
                                                  const ProblemInstance& problem) {
  std::set<double> levels;
  for (BasisIndex z : events) levels.insert(classical_energy(problem, z));
  // Merge numerically equal energies.
  std::vector<double> distinct;
  for (double e : levels) {
    if (distinct.empty() || !same_level(distinct.back(), e)) distinct.push_back(e);
  }
  if (distinct.size() < 2) {
    FloppinessEstimate out;
    out.mu.assign(static_cast<std::size_t>(problem.n_qubits()), 0.0);
    return out;
  }
  return floppy_pairs(events, [](BasisIndex) { return 1.0; }, problem, distinct[1]);
}

FloppinessEstimate amplitude_floppiness(const QuantumState& state, const ProblemInstance& problem,
                                        const ClassicalAnalysis& analysis) {
  auto out = floppy_pairs(analysis.first_excited_states,
                          [&state](BasisIndex z) { return state.probability(z); }, problem,
                          analysis.first_excited_energy);
  out.manifold_events = 0;
  return out;
}

RunReport make_run_report(const QuantumState& final_state, const ProblemInstance& problem,
                          const ClassicalAnalysis& analysis, std::size_t n_events, std::uint64_t seed) {
  RunReport r;
  r.seed = seed;
  r.events = sample_events(final_state, n_events, seed);
  r.n_events = n_events;
  r.success_probability = success_probability(final_state, analysis);
  std::size_t hits = 0;
  for (BasisIndex z : r.events) hits += analysis.is_ground(z) ? 1 : 0;
  r.empirical_success = static_cast<double>(hits) / static_cast<double>(n_events);
  auto obs = observables_from_events(r.events, problem);
  r.sigma_z_avg = std::move(obs.sigma_z_avg);
  r.final_avg_energy = obs.final_avg_energy;
  auto flop = empirical_floppiness(r.events, problem, analysis);
  r.floppiness = std::move(flop.mu);
  r.floppiness_empty = flop.empty_manifold;
  r.first_excited_events = flop.manifold_events;
  r.exact_avg_energy = exact_observables(final_state, problem).final_avg_energy;
  r.exact_floppiness = amplitude_floppiness(final_state, problem, analysis).mu;
  return r;
}

}  // namespace annealpath
