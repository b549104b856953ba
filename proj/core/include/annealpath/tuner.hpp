#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "annealpath/anneal_run.hpp"
#include "annealpath/classical_analysis.hpp"
#include "annealpath/problem.hpp"
#include "annealpath/propagation.hpp"
#include "annealpath/sampler.hpp"
#include "annealpath/schedule.hpp"
#include "annealpath/spectrum.hpp"

namespace annealpath {

enum class TunerMethod { floppiness, sigma_average, kiefer_wolfowitz };

std::string_view to_string(TunerMethod m);
TunerMethod parse_tuner_method(std::string_view text);

/// Which mu drives the floppiness update.
enum class FloppinessSource { events, exact };

struct TunerConfig {
  TunerMethod method = TunerMethod::floppiness;
  int iterations = 40;
  double alpha = -0.02;
  double kw_sign = -1.0;              // -1 descends the average energy
  double kw_alpha_exponent = -1.0;    // alpha_k = k^exponent
  double kw_c_exponent = -1.0 / 3.0;  // c_k = k^exponent
  std::size_t events_per_run = kDefaultEventsPerRun;
  std::uint64_t master_seed = 1;
  EvolutionConfig evolution;
  OffsetWindow window = OffsetWindow::standard();
  FloppinessSource floppiness_source = FloppinessSource::events;
  /// Iterations (1-based) at which the spectrum is computed for the offsets in use.
  std::vector<int> spectrum_iterations;
  SpectrumOptions spectrum;
  int jobs = 1;
};

/// One Kiefer-Wolfowitz probe run.
struct ProbeRecord {
  int qubit = 0;
  int direction = +1;  // +1 for gamma + c_k, -1 for gamma - c_k
  double offset = 0.0; // probed gamma after clamping
  bool clamped = false;
  RunReport report;
};

struct TunerRecord {
  int k = 0;
  std::vector<double> offsets;        // offsets used in this iteration's run(s)
  double success_probability = 0.0;   // KW: mean over the probes
  double final_avg_energy = 0.0;      // KW: mean over the probes
  std::vector<double> floppiness;     // KW: mean over the probes
  std::vector<double> statistic;      // per-qubit driver of the update
  bool flagged = false;               // zero-sample fallback or clamped probe
  std::optional<RunReport> report;    // floppiness and sigma-average methods
  std::vector<ProbeRecord> probes;    // Kiefer-Wolfowitz only
  std::optional<SpectrumTrace> spectrum;
};

struct TunerTrajectory {
  TunerMethod method = TunerMethod::floppiness;
  std::vector<TunerRecord> records;
  std::vector<double> final_offsets;  // after the last update
  std::size_t anneal_runs = 0;

  /// offsets after `k` updates; k = 0 is the all-zero start.
  std::vector<double> offsets_after(int k) const;
};

/// Produces the report of one anneal at the given schedule. Replaceable in tests.
using AnnealRunner = std::function<RunReport(const OffsetSchedule& schedule, std::uint64_t seed)>;

/// Default runner: run_anneal with the config's evolution settings.
AnnealRunner make_runner(const ProblemInstance& problem, const ClassicalAnalysis& analysis,
                         const TunerConfig& config);

/// gamma_{k+1} = clamp(gamma_k + alpha * statistic).
std::vector<double> static_step_update(std::span<const double> offsets, std::span<const double> statistic,
                                       double alpha, const OffsetWindow& window);

/// kw gains at iteration k (1-based): {alpha_k, c_k}.
std::pair<double, double> kw_gains(const TunerConfig& config, int k);

/// Seed of iteration k's run, or of probe (qubit, direction) within it.
std::uint64_t iteration_seed(std::uint64_t master, int k);
std::uint64_t probe_seed(std::uint64_t master, int k, int qubit, int direction);

/// `resume` continues a previous trajectory of the same method; the result is
/// identical to running all iterations in one call.
TunerTrajectory tune_floppiness(const ProblemInstance& problem, double anneal_time, const TunerConfig& config,
                                const AnnealRunner& runner = {}, const TunerTrajectory* resume = nullptr);
TunerTrajectory tune_sigma_average(const ProblemInstance& problem, double anneal_time,
                                   const TunerConfig& config, const AnnealRunner& runner = {},
                                   const TunerTrajectory* resume = nullptr);
TunerTrajectory tune_kiefer_wolfowitz(const ProblemInstance& problem, double anneal_time,
                                      const TunerConfig& config, const AnnealRunner& runner = {},
                                      const TunerTrajectory* resume = nullptr);

/// Dispatches on config.method.
TunerTrajectory tune(const ProblemInstance& problem, double anneal_time, const TunerConfig& config,
                     const AnnealRunner& runner = {}, const TunerTrajectory* resume = nullptr);

}  // namespace annealpath
