#include "commands.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "annealpath/anneal_run.hpp"
#include "annealpath/builtin_problems.hpp"
#include "annealpath/classical_analysis.hpp"
#include "annealpath/errors.hpp"
#include "annealpath/export.hpp"
#include "annealpath/parallel.hpp"
#include "annealpath/problem_io.hpp"
#include "annealpath/rng.hpp"
#include "annealpath/spectrum.hpp"
#include "annealpath/tuner.hpp"
#include "json.hpp"

namespace annealpath::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<double> OffsetGrid::values() const {
  if (!(step > 0.0) || hi < lo) throw UsageError("offset grid needs lo <= hi and step > 0");
  const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> out;
  for (long k = 0; k < count; ++k) {
    // Snap to 1e-9 so that e.g. -0.9 + 18 * 0.05 is exactly 0.
    out.push_back(std::round((lo + static_cast<double>(k) * step) * 1e9) / 1e9);
  }
  return out;
}

OffsetGrid parse_offset_grid(const std::string& text) {
  OffsetGrid g;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> g.lo >> c1 >> g.hi >> c2 >> g.step) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof()) {
    throw UsageError("offset grid must look like lo:hi:step, got '" + text + "'");
  }
  g.values();
  return g;
}

std::string config_to_document(const ExperimentConfig& c) {
  json j;
  j["command"] = c.command;
  j["problem"] = c.problem;
  j["problem_file"] = c.problem_file;
  j["scale_c"] = c.scale_c ? json(*c.scale_c) : json(nullptr);
  j["anneal_times_ns"] = c.anneal_times;
  j["tau_ns"] = c.tau;
  j["propagator"] = c.propagator;
  j["angular_factor"] = c.angular_factor;
  j["events"] = c.events;
  j["seed"] = c.seed;
  j["record_points"] = c.record_points;
  j["method"] = c.method;
  j["iterations"] = c.iterations;
  j["alpha"] = c.alpha;
  j["kw_sign"] = c.kw_sign;
  j["floppiness_source"] = c.floppiness_source;
  j["spectrum_at"] = c.spectrum_at;
  j["qubits"] = c.qubits;
  j["sweep_grid"] = {c.sweep.lo, c.sweep.hi, c.sweep.step};
  j["grid_points"] = c.grid_points;
  j["levels"] = c.levels;
  j["offsets_file"] = c.offsets_file;
  j["checkpoint"] = c.checkpoint;
  j["iteration"] = c.iteration;
  j["allow_extreme_offsets"] = c.allow_extreme_offsets;
  j["jobs"] = c.jobs;
  std::ostringstream out;
  out << std::setw(2) << j << '\n';
  return out.str();
}

ExperimentConfig config_from_document(const std::string& text) {
  ExperimentConfig c;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw UsageError("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
      if (key == "command") c.command = value.get<std::string>();
      else if (key == "problem") c.problem = value.get<std::string>();
      else if (key == "problem_file") c.problem_file = value.get<std::string>();
      else if (key == "scale_c") c.scale_c = value.is_null() ? std::nullopt : std::optional(value.get<double>());
      else if (key == "anneal_times_ns") c.anneal_times = value.get<std::vector<double>>();
      else if (key == "tau_ns") c.tau = value.get<double>();
      else if (key == "propagator") c.propagator = value.get<std::string>();
      else if (key == "angular_factor") c.angular_factor = value.get<double>();
      else if (key == "events") c.events = value.get<std::size_t>();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "record_points") c.record_points = value.get<int>();
      else if (key == "method") c.method = value.get<std::string>();
      else if (key == "iterations") c.iterations = value.get<int>();
      else if (key == "alpha") c.alpha = value.get<double>();
      else if (key == "kw_sign") c.kw_sign = value.get<double>();
      else if (key == "floppiness_source") c.floppiness_source = value.get<std::string>();
      else if (key == "spectrum_at") c.spectrum_at = value.get<std::vector<int>>();
      else if (key == "qubits") c.qubits = value.get<std::string>();
      else if (key == "sweep_grid") {
        const auto g = value.get<std::vector<double>>();
        if (g.size() != 3) throw UsageError("sweep_grid must be [lo, hi, step]");
        c.sweep = {g[0], g[1], g[2]};
      } else if (key == "grid_points") c.grid_points = value.get<int>();
      else if (key == "levels") c.levels = value.get<int>();
      else if (key == "offsets_file") c.offsets_file = value.get<std::string>();
      else if (key == "checkpoint") c.checkpoint = value.get<std::string>();
      else if (key == "iteration") c.iteration = value.get<int>();
      else if (key == "allow_extreme_offsets") c.allow_extreme_offsets = value.get<bool>();
      else if (key == "jobs") c.jobs = value.get<int>();
      else throw UsageError("unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed config: ") + e.what());
  }
  return c;
}

namespace {

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw RuntimeFailure("cannot write " + path.string());
}

std::string number(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

// Offsets files hold a JSON array of gammas or {"offsets": [...]}.
std::vector<double> read_offsets_file(const fs::path& path) {
  try {
    const json j = json::parse(read_text(path));
    return (j.is_object() ? j.at("offsets") : j).get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw UsageError("malformed offsets file " + path.string() + ": " + e.what());
  }
}

// Everything validated before any output is produced.
struct Plan {
  ProblemInstance problem;
  std::vector<double> offsets;
  OffsetWindow window = OffsetWindow::standard();
  Propagator propagator = Propagator::suzuki_trotter_2;
  TunerMethod method = TunerMethod::floppiness;
  std::optional<TunerTrajectory> resume;
  std::vector<int> sweep_qubits;  // zero-based
  std::vector<double> sweep_values;
};

ProblemInstance load_problem(const ExperimentConfig& c) {
  ProblemInstance p = c.problem_file.empty() ? builtin(c.problem) : read_problem_file(c.problem_file);
  if (c.scale_c) p = p.with_scale(*c.scale_c);
  return p;
}

Plan make_plan(const ExperimentConfig& c) {
  for (const auto* file : {&c.problem_file, &c.offsets_file, &c.checkpoint}) {
    if (!file->empty() && !fs::is_regular_file(*file)) throw UsageError("no such file: " + *file);
  }
  Plan plan{load_problem(c), {}, c.allow_extreme_offsets ? OffsetWindow::extreme() : OffsetWindow::standard()};
  const int n = plan.problem.n_qubits();

  if (c.anneal_times.empty()) throw UsageError("at least one --ta is required");
  for (double ta : c.anneal_times) {
    if (!(ta > 0.0)) throw UsageError("anneal times must be positive");
    step_count(ta, c.tau > 0.0 ? c.tau : default_time_step(ta));
  }
  plan.propagator = parse_propagator(c.propagator);
  plan.method = parse_tuner_method(c.method);
  if (c.floppiness_source != "events" && c.floppiness_source != "exact") {
    throw UsageError("floppiness source must be 'events' or 'exact'");
  }
  if (!(c.angular_factor > 0.0)) throw UsageError("angular factor must be positive");
  if (c.events < 1) throw UsageError("--events must be at least 1");
  if (c.levels < 2 || static_cast<std::size_t>(c.levels) > plan.problem.dimension()) {
    throw UsageError("--levels must be between 2 and 2^N");
  }
  if (c.grid_points < 2) throw UsageError("--grid needs at least 2 points");
  if (c.iterations < 1) throw UsageError("--iterations must be at least 1");
  if (c.kw_sign != 1.0 && c.kw_sign != -1.0) throw UsageError("--kw-sign must be +1 or -1");

  if (!c.offsets_file.empty() && !c.checkpoint.empty()) {
    throw UsageError("--offsets-file and --checkpoint are mutually exclusive");
  }
  plan.offsets.assign(static_cast<std::size_t>(n), 0.0);
  if (!c.offsets_file.empty()) {
    if (c.command == "tune") throw UsageError("tune starts from zero offsets; use --checkpoint to resume");
    plan.offsets = read_offsets_file(c.offsets_file);
  }
  if (!c.checkpoint.empty()) {
    TunerTrajectory t = trajectory_from_checkpoint(read_text(c.checkpoint));
    if (t.final_offsets.size() != static_cast<std::size_t>(n)) throw UsageError("checkpoint qubit count differs");
    if (c.command == "tune") {
      if (t.method != plan.method) throw UsageError("checkpoint was written by a different method");
      plan.resume = std::move(t);
    } else {
      plan.offsets = t.offsets_after(c.iteration < 0 ? static_cast<int>(t.records.size()) : c.iteration);
    }
  }
  if (plan.offsets.size() != static_cast<std::size_t>(n)) throw UsageError("offset count differs from qubit count");
  for (double g : plan.offsets) {
    if (!plan.window.contains(g)) throw UsageError("offset " + number(g) + " lies outside the allowed window");
  }

  if (c.command == "sweep-offset") {
    if (c.anneal_times.size() != 1) throw UsageError("sweep-offset takes exactly one --ta");
    if (c.qubits == "each") {
      for (int q = 0; q < n; ++q) plan.sweep_qubits.push_back(q);
    } else {
      int q = 0;
      try {
        q = std::stoi(c.qubits);
      } catch (const std::exception&) {
        throw UsageError("--qubit must be 'each' or a 1-based index");
      }
      if (q < 1 || q > n) throw UsageError("--qubit out of range");
      plan.sweep_qubits.push_back(q - 1);
    }
    plan.sweep_values = c.sweep.values();
    for (double g : plan.sweep_values) {
      if (!plan.window.contains(g)) throw UsageError("sweep value " + number(g) + " lies outside the allowed window");
    }
  }
  if ((c.command == "tune" || c.command == "spectrum") && c.anneal_times.size() != 1) {
    throw UsageError(c.command + " takes exactly one --ta");
  }
  return plan;
}

fs::path default_output(const ExperimentConfig& c, const ProblemInstance& p) {
  const char* root = std::getenv("ANNEALPATH_OUTPUT_ROOT");
  const fs::path base = root && *root ? fs::path(root) : fs::path("runs");
  const std::string stem = c.command + "-" + (p.label().empty() ? "problem" : p.label()) + "-seed" +
                           std::to_string(c.seed);
  fs::path candidate = base / stem;
  for (int k = 2; fs::exists(candidate); ++k) candidate = base / (stem + "-" + std::to_string(k));
  return candidate;
}

// Files go into a hidden sibling directory that is renamed into place on success.
class StagingDir {
 public:
  explicit StagingDir(fs::path target) : target_(std::move(target)) {
    fs::create_directories(target_.parent_path().empty() ? fs::path(".") : target_.parent_path());
    staging_ = target_.parent_path() / ("." + target_.filename().string() + ".partial-" + std::to_string(::getpid()));
    fs::remove_all(staging_);
    fs::create_directory(staging_);
  }
  StagingDir(const StagingDir&) = delete;
  StagingDir& operator=(const StagingDir&) = delete;
  ~StagingDir() {
    std::error_code ec;
    if (!committed_) fs::remove_all(staging_, ec);
  }
  const fs::path& path() const { return staging_; }
  void commit() {
    fs::rename(staging_, target_);
    committed_ = true;
  }

 private:
  fs::path target_;
  fs::path staging_;
  bool committed_ = false;
};

struct Run {
  const ExperimentConfig& config;
  const Plan& plan;
  fs::path dir;
  std::ostream& console;
  std::ofstream log;
  std::string stage = "setup";
  OutputUnits units;

  void note(const std::string& line) {
    log << line << '\n';
    console << line << '\n';
  }
  void begin(const std::string& name) {
    stage = name;
    log << "[" << name << "]\n";
  }
  template <typename Writer>
  void csv(const std::string& name, Writer&& writer) {
    std::ofstream out(dir / name, std::ios::binary);
    writer(out);
    if (!out) throw RuntimeFailure("cannot write " + name);
  }
};

EvolutionConfig evolution_for(const ExperimentConfig& c, const Plan& plan, double ta, int points) {
  EvolutionConfig e;
  e.time_step = c.tau;
  e.propagator = plan.propagator;
  e.angular_factor = c.angular_factor;
  const std::size_t steps = step_count(ta, c.tau > 0.0 ? c.tau : default_time_step(ta));
  if (points >= 2) e.record_stride = std::max<std::size_t>(1, steps / static_cast<std::size_t>(points - 1));
  return e;
}

std::string ta_tag(double ta) { return "ta" + number(ta); }

void cmd_anneal(Run& r) {
  const auto& c = r.config;
  r.begin("classical analysis");
  const ClassicalAnalysis analysis = analyze(r.plan.problem);
  std::vector<std::pair<double, RunReport>> reports;
  for (std::size_t i = 0; i < c.anneal_times.size(); ++i) {
    const double ta = c.anneal_times[i];
    r.begin("anneal t_a=" + number(ta));
    RunSettings settings{evolution_for(c, r.plan, ta, c.record_points), c.events};
    const OffsetSchedule schedule(r.plan.offsets, ta, r.plan.window);
    AnnealRun run = run_anneal(r.plan.problem, analysis, schedule, settings, derive_seed(c.seed, i));
    const std::string tag = ta_tag(ta);
    write_text(r.dir / ("report_" + tag + ".json"), report_to_document(run.report, r.plan.problem, r.units));
    r.csv("trajectory_" + tag + ".csv",
          [&](std::ostream& o) { write_trajectory_csv(o, run.trajectory.points, r.units); });
    r.csv("events_" + tag + ".csv",
          [&](std::ostream& o) { write_events_csv(o, run.report.events, r.plan.problem, r.units); });
    r.note("t_a=" + number(ta) + " ns success_probability=" + number(run.report.success_probability) +
           " final_avg_energy_GHz=" + number(run.report.final_avg_energy) +
           " first_excited_GHz=" + number(analysis.first_excited_energy));
    reports.emplace_back(ta, std::move(run.report));
  }
  r.csv("summary.csv", [&](std::ostream& o) {
    o << units_comment(r.units) << '\n'
      << "t_a_ns,success_probability,empirical_success,final_avg_energy_GHz,exact_avg_energy_GHz\n"
      << std::setprecision(12);
    for (const auto& [ta, rep] : reports) {
      o << ta << ',' << rep.success_probability << ',' << rep.empirical_success << ',' << rep.final_avg_energy
        << ',' << rep.exact_avg_energy << '\n';
    }
  });
}

struct SweepRow {
  int qubit = 0;
  double gamma = 0.0;
  double success = 0.0;
  double abs_sigma = 0.0;
  double mu = 0.0;
};

void write_sweep_rows(std::ostream& o, const OutputUnits& units, const std::vector<SweepRow>& rows) {
  o << units_comment(units) << '\n' << "qubit,gamma,success_probability,abs_sigma_z,mu\n" << std::setprecision(12);
  for (const auto& row : rows) {
    o << row.qubit << ',' << row.gamma << ',' << row.success << ',' << row.abs_sigma << ',' << row.mu << '\n';
  }
}

void cmd_sweep_offset(Run& r) {
  const auto& c = r.config;
  const auto& plan = r.plan;
  const double ta = c.anneal_times.front();
  r.begin("classical analysis");
  const ClassicalAnalysis analysis = analyze(plan.problem);
  r.begin("sweep t_a=" + number(ta));
  const RunSettings settings{evolution_for(c, plan, ta, 0), c.events};
  const std::size_t per_qubit = plan.sweep_values.size();
  std::vector<SweepRow> rows(plan.sweep_qubits.size() * per_qubit);
  parallel_for(rows.size(), c.jobs, [&](std::size_t idx) {
    const int q = plan.sweep_qubits[idx / per_qubit];
    const std::size_t g = idx % per_qubit;
    std::vector<double> gammas = plan.offsets;
    gammas[static_cast<std::size_t>(q)] = plan.sweep_values[g];
    // Seeded by grid position only, so equal schedules give equal rows.
    const auto run = run_anneal(plan.problem, analysis, OffsetSchedule(gammas, ta, plan.window), settings,
                                derive_seed(c.seed, g));
    const auto qs = static_cast<std::size_t>(q);
    rows[idx] = {q + 1, plan.sweep_values[g], run.report.success_probability,
                 std::abs(run.report.sigma_z_avg[qs]), run.report.floppiness[qs]};
  });
  r.csv("sweep.csv", [&](std::ostream& o) { write_sweep_rows(o, r.units, rows); });
  for (std::size_t k = 0; k < plan.sweep_qubits.size(); ++k) {
    const std::vector<SweepRow> slice(rows.begin() + static_cast<long>(k * per_qubit),
                                      rows.begin() + static_cast<long>((k + 1) * per_qubit));
    r.csv("sweep_qubit_" + std::to_string(plan.sweep_qubits[k] + 1) + ".csv",
          [&](std::ostream& o) { write_sweep_rows(o, r.units, slice); });
    const auto best = std::max_element(slice.begin(), slice.end(),
                                       [](const auto& a, const auto& b) { return a.success < b.success; });
    r.note("qubit " + std::to_string(best->qubit) + ": best gamma=" + number(best->gamma) +
           " success_probability=" + number(best->success));
  }
}

SpectrumOptions spectrum_options(const ExperimentConfig& c) {
  SpectrumOptions o;
  o.grid_points = c.grid_points;
  o.levels = c.levels;
  o.jobs = c.jobs;
  return o;
}

std::string gap_line(const GapPoint& g) {
  return "min_gap_GHz=" + number(g.gap) + " s_star=" + number(g.s);
}

void cmd_spectrum(Run& r) {
  const auto& c = r.config;
  r.begin("spectrum");
  const OffsetSchedule schedule(r.plan.offsets, c.anneal_times.front(), r.plan.window);
  const SpectrumTrace trace = spectrum_along_anneal(r.plan.problem, schedule, spectrum_options(c));
  r.csv("spectrum.csv", [&](std::ostream& o) { write_spectrum_csv(o, trace, r.units); });
  json summary{{"min_gap_GHz", trace.min_gap.gap}, {"s_star", trace.min_gap.s}, {"offsets", r.plan.offsets}};
  write_text(r.dir / "summary.json", summary.dump(2) + "\n");
  r.note(gap_line(trace.min_gap));
}

void cmd_tune(Run& r) {
  const auto& c = r.config;
  const auto& plan = r.plan;
  const double ta = c.anneal_times.front();
  TunerConfig tc;
  tc.method = plan.method;
  tc.alpha = c.alpha;
  tc.kw_sign = c.kw_sign;
  tc.events_per_run = c.events;
  tc.master_seed = c.seed;
  tc.window = plan.window;
  tc.floppiness_source = c.floppiness_source == "exact" ? FloppinessSource::exact : FloppinessSource::events;
  tc.spectrum_iterations = c.spectrum_at;
  tc.spectrum = spectrum_options(c);
  tc.jobs = c.jobs;
  // Record <E(s)> on the spectrum grid when the step count allows it.
  tc.evolution = evolution_for(c, plan, ta, 0);
  const std::size_t steps = step_count(ta, c.tau > 0.0 ? c.tau : default_time_step(ta));
  const auto intervals = static_cast<std::size_t>(c.grid_points - 1);
  if (!c.spectrum_at.empty() && steps % intervals == 0) tc.evolution.record_stride = steps / intervals;

  r.begin("classical analysis");
  const ClassicalAnalysis analysis = analyze(plan.problem);
  TunerTrajectory traj;
  if (plan.resume) traj = *plan.resume;
  const int first = static_cast<int>(traj.records.size()) + 1;
  if (first > c.iterations) throw UsageError("checkpoint already holds " + std::to_string(first - 1) + " iterations");
  // One iteration per call; resuming is equivalent to a single long run.
  const AnnealRunner runner = make_runner(plan.problem, analysis, tc);
  for (int k = first; k <= c.iterations; ++k) {
    r.begin("tune iteration " + std::to_string(k));
    tc.iterations = k;
    traj = tune(plan.problem, ta, tc, runner, traj.records.empty() && !plan.resume ? nullptr : &traj);
    const TunerRecord& rec = traj.records.back();
    std::string line = "k=" + std::to_string(k) + " success_probability=" + number(rec.success_probability) +
                       " final_avg_energy_GHz=" + number(rec.final_avg_energy);
    if (rec.flagged) line += " flagged";
    if (rec.spectrum) {
      line += " " + gap_line(rec.spectrum->min_gap);
      r.csv("spectrum_k" + std::to_string(k) + ".csv",
            [&](std::ostream& o) { write_spectrum_csv(o, *rec.spectrum, r.units); });
    }
    r.note(line);
  }

  r.begin("write trajectory");
  r.csv("tuner.csv", [&](std::ostream& o) { write_tuner_csv(o, traj, r.units); });
  write_text(r.dir / "checkpoint.json", trajectory_to_checkpoint(traj));
  write_text(r.dir / "final_offsets.json", json{{"offsets", traj.final_offsets}}.dump(2) + "\n");
  r.csv("gaps.csv", [&](std::ostream& o) {
    o << units_comment(r.units) << '\n' << "k,s_star,min_gap_GHz\n" << std::setprecision(12);
    for (const auto& rec : traj.records) {
      if (rec.spectrum) o << rec.k << ',' << rec.spectrum->min_gap.s << ',' << rec.spectrum->min_gap.gap << '\n';
    }
  });
  if (plan.method == TunerMethod::kiefer_wolfowitz) {
    r.csv("probes.csv", [&](std::ostream& o) {
      o << units_comment(r.units) << '\n'
        << "k,qubit,direction,offset,clamped,success_probability,final_avg_energy_GHz\n"
        << std::setprecision(12);
      for (const auto& rec : traj.records) {
        for (const auto& p : rec.probes) {
          o << rec.k << ',' << p.qubit + 1 << ',' << p.direction << ',' << p.offset << ',' << (p.clamped ? 1 : 0)
            << ',' << p.report.success_probability << ',' << p.report.final_avg_energy << '\n';
        }
      }
    });
  }
  r.note("anneal_runs=" + std::to_string(traj.anneal_runs));

  r.begin("final run");
  const OffsetSchedule tuned(traj.final_offsets, ta, plan.window);
  const RunReport final_report = runner(tuned, iteration_seed(c.seed, 0));
  write_text(r.dir / "final_report.json", report_to_document(final_report, plan.problem, r.units));
  r.note("final success_probability=" + number(final_report.success_probability));
}

int list_problems(std::ostream& console) {
  console << "label,n_qubits,couplings,ground_energy_GHz,ground_states,first_excited_GHz,first_excited_states\n";
  for (const auto& label : builtin_labels()) {
    const auto p = builtin(label);
    const auto a = analyze(p);
    console << label << ',' << p.n_qubits() << ',' << p.couplings().size() << ',' << number(a.ground_energy) << ','
            << a.ground_states.size() << ',' << number(a.first_excited_energy) << ','
            << a.first_excited_states.size() << '\n';
  }
  return 0;
}

}  // namespace

int execute(const ExperimentConfig& config, const fs::path& out, std::ostream& console, std::ostream& errors) {
  static const std::vector<std::string> commands{"list-problems", "export-problem", "anneal",
                                                 "sweep-offset",  "spectrum",       "tune"};
  if (std::find(commands.begin(), commands.end(), config.command) == commands.end()) {
    errors << "annealpath: unknown command '" << config.command << "'\n";
    return 1;
  }
  if (config.command == "list-problems") return list_problems(console);

  std::optional<Plan> plan;
  fs::path target = out;
  try {
    plan = make_plan(config);
    if (config.command != "export-problem") {
      if (target.empty()) target = default_output(config, plan->problem);
      if (fs::exists(target)) throw UsageError("output directory " + target.string() + " already exists");
    }
  } catch (const std::exception& e) {
    errors << "annealpath: " << e.what() << '\n';
    return 1;
  }

  if (config.command == "export-problem") {
    try {
      if (target.empty()) {
        console << problem_to_document(plan->problem);
      } else {
        write_problem_file(plan->problem, target);
      }
      return 0;
    } catch (const std::exception& e) {
      errors << "annealpath: export failed: " << e.what() << '\n';
      return 2;
    }
  }

  std::string stage = "setup";
  try {
    StagingDir staging(target);
    Run r{config, *plan, staging.path(), console, std::ofstream(staging.path() / "log.txt"), "setup",
          OutputUnits{config.angular_factor}};
    write_text(r.dir / "config.json", config_to_document(config));
    r.log << "command: " << config.command << "\nproblem: " << plan->problem.label() << "\n";
    try {
      if (config.command == "anneal") cmd_anneal(r);
      else if (config.command == "sweep-offset") cmd_sweep_offset(r);
      else if (config.command == "spectrum") cmd_spectrum(r);
      else cmd_tune(r);
    } catch (...) {
      stage = r.stage;
      throw;
    }
    r.log.close();
    staging.commit();
    console << "output: " << target.string() << '\n';
    return 0;
  } catch (const UsageError& e) {
    errors << "annealpath: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    errors << "annealpath: " << stage << " failed: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace annealpath::cli
