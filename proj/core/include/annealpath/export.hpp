#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "annealpath/problem.hpp"
#include "annealpath/propagation.hpp"
#include "annealpath/sampler.hpp"
#include "annealpath/spectrum.hpp"
#include "annealpath/tuner.hpp"

namespace annealpath {

/// Written as a leading '#' comment in every CSV so units travel with the data.
struct OutputUnits {
  double angular_factor = kDefaultAngularFactor;
};

std::string units_comment(const OutputUnits& units);

/// s, avg_energy_GHz, ground_population
void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryPoint> points, const OutputUnits& units);

/// s, level_0_GHz .. level_{k-1}_GHz [, avg_energy_GHz]
void write_spectrum_csv(std::ostream& out, const SpectrumTrace& trace, const OutputUnits& units);

/// bitstring, energy_GHz, count; one row per distinct event in basis order.
void write_events_csv(std::ostream& out, std::span<const BasisIndex> events, const ProblemInstance& problem,
                      const OutputUnits& units);

/// k, success_probability, final_avg_energy_GHz, gamma_1..gamma_N, mu_1..mu_N
void write_tuner_csv(std::ostream& out, const TunerTrajectory& trajectory, const OutputUnits& units);

/// Scalar observables and per-qubit vectors of one run as a JSON document.
std::string report_to_document(const RunReport& report, const ProblemInstance& problem, const OutputUnits& units);

/// Resumable tuner state (offsets, per-iteration statistics, probe summaries).
/// Events are not stored.
std::string trajectory_to_checkpoint(const TunerTrajectory& trajectory);
TunerTrajectory trajectory_from_checkpoint(const std::string& text);

}  // namespace annealpath
