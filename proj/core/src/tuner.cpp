#include "annealpath/tuner.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "annealpath/errors.hpp"
#include "annealpath/parallel.hpp"
#include "annealpath/rng.hpp"

namespace annealpath {

std::string_view to_string(TunerMethod m) {
  switch (m) {
    case TunerMethod::floppiness:
      return "floppiness";
    case TunerMethod::sigma_average:
      return "sigma-average";
    case TunerMethod::kiefer_wolfowitz:
      return "kiefer-wolfowitz";
  }
  return "unknown";
}

TunerMethod parse_tuner_method(std::string_view text) {
  if (text == "floppiness") return TunerMethod::floppiness;
  if (text == "sigma-average") return TunerMethod::sigma_average;
  if (text == "kiefer-wolfowitz" || text == "kw") return TunerMethod::kiefer_wolfowitz;
  throw InputError("unknown tuner method '" + std::string(text) + "'");
}

std::vector<double> TunerTrajectory::offsets_after(int k) const {
  if (k < 0 || k > static_cast<int>(records.size())) throw InputError("iteration out of range");
  if (k == static_cast<int>(records.size())) return final_offsets;
  return records[static_cast<std::size_t>(k)].offsets;
}

AnnealRunner make_runner(const ProblemInstance& problem, const ClassicalAnalysis& analysis,
                         const TunerConfig& config) {
  RunSettings settings{config.evolution, config.events_per_run};
  return [&problem, &analysis, settings](const OffsetSchedule& schedule, std::uint64_t seed) {
    return run_anneal(problem, analysis, schedule, settings, seed).report;
  };
}

std::vector<double> static_step_update(std::span<const double> offsets, std::span<const double> statistic,
                                       double alpha, const OffsetWindow& window) {
  if (offsets.size() != statistic.size()) throw InputError("offset and statistic sizes differ");
  std::vector<double> next(offsets.size());
  for (std::size_t q = 0; q < offsets.size(); ++q) next[q] = window.clamp(offsets[q] + alpha * statistic[q]);
  return next;
}

std::pair<double, double> kw_gains(const TunerConfig& config, int k) {
  if (k < 1) throw InputError("iterations are numbered from 1");
  const double kd = static_cast<double>(k);
  return {std::pow(kd, config.kw_alpha_exponent), std::pow(kd, config.kw_c_exponent)};
}

std::uint64_t iteration_seed(std::uint64_t master, int k) {
  return derive_seed(master, static_cast<std::uint64_t>(k));
}

std::uint64_t probe_seed(std::uint64_t master, int k, int qubit, int direction) {
  return derive_seed(iteration_seed(master, k), static_cast<std::uint64_t>(2 * qubit + (direction > 0 ? 0 : 1)));
}

namespace {

void validate(const ProblemInstance& problem, double anneal_time, const TunerConfig& config, TunerMethod method) {
  if (config.method != method) throw InputError("tuner config names a different method");
  if (config.iterations < 1) throw InputError("iterations must be at least 1");
  if (config.events_per_run < 1) throw InputError("events per run must be at least 1");
  if (!(anneal_time > 0.0)) throw InputError("anneal time must be positive");
  if (problem.n_qubits() < 1) throw InputError("empty problem");
  if (method == TunerMethod::kiefer_wolfowitz && config.kw_sign != 1.0 && config.kw_sign != -1.0) {
    throw InputError("kw_sign must be +1 or -1");
  }
}

struct LoopState {
  TunerTrajectory traj;
  std::vector<double> offsets;
  int first_k = 1;
};

LoopState start(const ProblemInstance& problem, TunerMethod method, const TunerTrajectory* resume) {
  LoopState st;
  st.traj.method = method;
  st.offsets.assign(static_cast<std::size_t>(problem.n_qubits()), 0.0);
  if (resume) {
    if (resume->method != method) throw InputError("checkpoint was written by a different method");
    if (resume->final_offsets.size() != st.offsets.size()) throw InputError("checkpoint qubit count differs");
    st.traj = *resume;
    st.offsets = resume->final_offsets;
    st.first_k = static_cast<int>(resume->records.size()) + 1;
  }
  return st;
}

bool wants_spectrum(const TunerConfig& config, int k) {
  return std::find(config.spectrum_iterations.begin(), config.spectrum_iterations.end(), k) !=
         config.spectrum_iterations.end();
}

SpectrumTrace record_spectrum(const ProblemInstance& problem, const OffsetSchedule& schedule,
                              const TunerConfig& config, const std::vector<TrajectoryPoint>& points) {
  SpectrumOptions opts = config.spectrum;
  opts.jobs = config.jobs;
  SpectrumTrace trace = spectrum_along_anneal(problem, schedule, opts);
  // Attach <E(s)> where the run recorded the same grid.
  std::vector<double> avg(trace.grid.size());
  std::size_t matched = 0;
  for (std::size_t g = 0; g < trace.grid.size(); ++g) {
    for (const auto& p : points) {
      if (std::abs(p.s - trace.grid[g]) < 1e-9) {
        avg[g] = p.avg_energy;
        ++matched;
        break;
      }
    }
  }
  if (matched == trace.grid.size()) trace.avg_energy = std::move(avg);
  return trace;
}

template <typename Statistic>
TunerTrajectory static_step_loop(const ProblemInstance& problem, double anneal_time, const TunerConfig& config,
                                 const AnnealRunner& runner_in, const TunerTrajectory* resume,
                                 TunerMethod method, Statistic statistic) {
  validate(problem, anneal_time, config, method);
  const ClassicalAnalysis analysis = analyze(problem);
  const AnnealRunner runner = runner_in ? runner_in : make_runner(problem, analysis, config);
  LoopState st = start(problem, method, resume);

  for (int k = st.first_k; k <= config.iterations; ++k) {
    const OffsetSchedule schedule(st.offsets, anneal_time, config.window);
    RunReport report = runner(schedule, iteration_seed(config.master_seed, k));
    ++st.traj.anneal_runs;

    TunerRecord rec;
    rec.k = k;
    rec.offsets = st.offsets;
    rec.success_probability = report.success_probability;
    rec.final_avg_energy = report.final_avg_energy;
    rec.floppiness = report.floppiness;
    rec.statistic = statistic(report, rec.flagged);
    if (wants_spectrum(config, k)) rec.spectrum = record_spectrum(problem, schedule, config, report.trajectory);
    st.offsets = static_step_update(st.offsets, rec.statistic, config.alpha, config.window);
    rec.report = std::move(report);
    st.traj.records.push_back(std::move(rec));
  }
  st.traj.final_offsets = st.offsets;
  return st.traj;
}

}  // namespace

TunerTrajectory tune_floppiness(const ProblemInstance& problem, double anneal_time, const TunerConfig& config,
                                const AnnealRunner& runner, const TunerTrajectory* resume) {
  const FloppinessSource source = config.floppiness_source;
  const auto n = static_cast<std::size_t>(problem.n_qubits());
  return static_step_loop(problem, anneal_time, config, runner, resume, TunerMethod::floppiness,
                          [source, n](const RunReport& r, bool& flagged) {
                            if (source == FloppinessSource::exact) {
                              if (r.exact_floppiness.size() == n) return r.exact_floppiness;
                              flagged = true;
                              return std::vector<double>(n, 0.0);
                            }
                            // No event at the first-excited level: hold the offsets.
                            if (r.floppiness_empty || r.floppiness.size() != n) {
                              flagged = true;
                              return std::vector<double>(n, 0.0);
                            }
                            return r.floppiness;
                          });
}

TunerTrajectory tune_sigma_average(const ProblemInstance& problem, double anneal_time,
                                   const TunerConfig& config, const AnnealRunner& runner,
                                   const TunerTrajectory* resume) {
  return static_step_loop(problem, anneal_time, config, runner, resume, TunerMethod::sigma_average,
                          [](const RunReport& r, bool&) {
                            std::vector<double> stat(r.sigma_z_avg.size());
                            for (std::size_t q = 0; q < stat.size(); ++q) stat[q] = 1.0 - std::abs(r.sigma_z_avg[q]);
                            return stat;
                          });
}

TunerTrajectory tune_kiefer_wolfowitz(const ProblemInstance& problem, double anneal_time,
                                      const TunerConfig& config, const AnnealRunner& runner_in,
                                      const TunerTrajectory* resume) {
  validate(problem, anneal_time, config, TunerMethod::kiefer_wolfowitz);
  const ClassicalAnalysis analysis = analyze(problem);
  const AnnealRunner runner = runner_in ? runner_in : make_runner(problem, analysis, config);
  LoopState st = start(problem, TunerMethod::kiefer_wolfowitz, resume);
  const int n = problem.n_qubits();

  for (int k = st.first_k; k <= config.iterations; ++k) {
    const auto [alpha_k, c_k] = kw_gains(config, k);
    TunerRecord rec;
    rec.k = k;
    rec.offsets = st.offsets;
    rec.probes.resize(static_cast<std::size_t>(2 * n));

    // Every probe perturbs one qubit of the same base offsets.
    parallel_for(rec.probes.size(), config.jobs, [&](std::size_t p) {
      const int qubit = static_cast<int>(p / 2);
      const int direction = (p % 2 == 0) ? +1 : -1;
      std::vector<double> gammas = st.offsets;
      const double wanted = gammas[static_cast<std::size_t>(qubit)] + direction * c_k;
      const double probed = config.window.clamp(wanted);
      gammas[static_cast<std::size_t>(qubit)] = probed;
      ProbeRecord& pr = rec.probes[p];
      pr.qubit = qubit;
      pr.direction = direction;
      pr.offset = probed;
      pr.clamped = probed != wanted;
      pr.report = runner(OffsetSchedule(std::move(gammas), anneal_time, config.window),
                         probe_seed(config.master_seed, k, qubit, direction));
    });
    st.traj.anneal_runs += rec.probes.size();

    rec.statistic.assign(static_cast<std::size_t>(n), 0.0);
    rec.floppiness.assign(static_cast<std::size_t>(n), 0.0);
    std::vector<double> next = st.offsets;
    for (int q = 0; q < n; ++q) {
      const ProbeRecord& plus = rec.probes[static_cast<std::size_t>(2 * q)];
      const ProbeRecord& minus = rec.probes[static_cast<std::size_t>(2 * q + 1)];
      rec.flagged = rec.flagged || plus.clamped || minus.clamped;
      // Divide by the probed separation, which equals 2 c_k unless a probe was clamped.
      const double width = plus.offset - minus.offset;
      const double quotient =
          width > 0.0 ? (plus.report.final_avg_energy - minus.report.final_avg_energy) / width : 0.0;
      rec.statistic[static_cast<std::size_t>(q)] = quotient;
      next[static_cast<std::size_t>(q)] =
          config.window.clamp(st.offsets[static_cast<std::size_t>(q)] + config.kw_sign * alpha_k * quotient);
    }
    const double count = static_cast<double>(rec.probes.size());
    for (const auto& pr : rec.probes) {
      rec.success_probability += pr.report.success_probability / count;
      rec.final_avg_energy += pr.report.final_avg_energy / count;
      for (int q = 0; q < n; ++q) {
        if (static_cast<std::size_t>(q) < pr.report.floppiness.size()) {
          rec.floppiness[static_cast<std::size_t>(q)] += pr.report.floppiness[static_cast<std::size_t>(q)] / count;
        }
      }
    }
    if (wants_spectrum(config, k)) {
      rec.spectrum = record_spectrum(problem, OffsetSchedule(st.offsets, anneal_time, config.window), config, {});
    }
    st.offsets = std::move(next);
    st.traj.records.push_back(std::move(rec));
  }
  st.traj.final_offsets = st.offsets;
  return st.traj;
}

TunerTrajectory tune(const ProblemInstance& problem, double anneal_time, const TunerConfig& config,
                     const AnnealRunner& runner, const TunerTrajectory* resume) {
  switch (config.method) {
    case TunerMethod::floppiness:
      return tune_floppiness(problem, anneal_time, config, runner, resume);
    case TunerMethod::sigma_average:
      return tune_sigma_average(problem, anneal_time, config, runner, resume);
    case TunerMethod::kiefer_wolfowitz:
      return tune_kiefer_wolfowitz(problem, anneal_time, config, runner, resume);
  }
  throw InputError("unknown tuner method");
}

}  // namespace annealpath
