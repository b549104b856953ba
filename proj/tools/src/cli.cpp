#include <fstream>
#include <functional>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace annealpath::cli {

namespace {

// Flags only override the config file when they appear on the command line.
class Overrides {
 public:
  template <typename T, typename Set>
  CLI::Option* add(CLI::App* app, const std::string& name, const std::string& help, Set set) {
    auto value = std::make_shared<T>();
    CLI::Option* opt = app->add_option(name, *value, help);
    apply_.push_back([opt, value, set](ExperimentConfig& c) {
      if (opt->count() > 0) set(c, *value);
    });
    return opt;
  }
  void flag(CLI::App* app, const std::string& name, const std::string& help,
            std::function<void(ExperimentConfig&)> set) {
    CLI::Option* opt = app->add_flag(name, help);
    apply_.push_back([opt, set](ExperimentConfig& c) {
      if (opt->count() > 0) set(c);
    });
  }
  void apply(ExperimentConfig& c) const {
    for (const auto& f : apply_) f(c);
  }

 private:
  std::vector<std::function<void(ExperimentConfig&)>> apply_;
};

struct Common {
  std::string config;
  std::string out;
};

void add_problem_flags(CLI::App* app, Overrides& ov) {
  ov.add<std::string>(app, "--problem", "Built-in problem label (487, 26, 301)",
                      [](auto& c, const auto& v) { c.problem = v; });
  ov.add<std::string>(app, "--problem-file", "Problem JSON file",
                      [](auto& c, const auto& v) { c.problem_file = v; });
  ov.add<double>(app, "--scale-c", "Problem energy scale C", [](auto& c, double v) { c.scale_c = v; });
}

void add_run_flags(CLI::App* app, Overrides& ov, bool many_times) {
  auto* ta = ov.add<std::vector<double>>(app, "--ta", "Anneal time(s) in ns",
                                         [](auto& c, const auto& v) { c.anneal_times = v; });
  if (many_times) ta->delimiter(',');
  else ta->expected(1);
  ov.add<double>(app, "--tau", "Time step in ns (default min(t_a/10000, 1e-3))",
                 [](auto& c, double v) { c.tau = v; });
  ov.add<std::string>(app, "--propagator", "suzuki-trotter-2 | exact-midpoint",
                      [](auto& c, const auto& v) { c.propagator = v; });
  ov.add<double>(app, "--angular-factor", "Phase factor w in exp(-i w t H)",
                 [](auto& c, double v) { c.angular_factor = v; });
  ov.add<std::size_t>(app, "--events", "Measurement events per run", [](auto& c, std::size_t v) { c.events = v; });
  ov.add<std::uint64_t>(app, "--seed", "Master seed", [](auto& c, std::uint64_t v) { c.seed = v; });
  ov.add<int>(app, "--record-points", "Recorded trajectory points per run",
              [](auto& c, int v) { c.record_points = v; });
}

void add_offset_flags(CLI::App* app, Overrides& ov) {
  ov.add<std::string>(app, "--offsets-file", "JSON array of anneal offsets",
                      [](auto& c, const auto& v) { c.offsets_file = v; });
  ov.add<std::string>(app, "--checkpoint", "Tuner checkpoint to take offsets from",
                      [](auto& c, const auto& v) { c.checkpoint = v; });
  ov.add<int>(app, "--iteration", "Checkpoint iteration (default: final offsets)",
              [](auto& c, int v) { c.iteration = v; });
  ov.flag(app, "--allow-extreme-offsets", "Allow offsets down to -1 (exclusive)",
          [](auto& c) { c.allow_extreme_offsets = true; });
}

void add_spectrum_flags(CLI::App* app, Overrides& ov) {
  ov.add<int>(app, "--grid", "Number of s grid points", [](auto& c, int v) { c.grid_points = v; });
  ov.add<int>(app, "--levels", "Eigenvalues per grid point", [](auto& c, int v) { c.levels = v; });
}

void add_jobs_flag(CLI::App* app, Overrides& ov) {
  ov.add<int>(app, "--jobs", "Worker threads (default: all cores)", [](auto& c, int v) { c.jobs = v; });
}

void add_common(CLI::App* app, Common& common) {
  app->add_option("--config", common.config, "Experiment config (e.g. an echoed config.json)");
  app->add_option("--out", common.out, "Output directory (export-problem: output file)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& console, std::ostream& errors) {
  CLI::App app{"Per-qubit anneal offset experiments on small Ising problems"};
  app.name("annealpath");
  Overrides ov;
  Common common;
  add_common(&app, common);

  auto* list = app.add_subcommand("list-problems", "Show the built-in problems");

  auto* exp = app.add_subcommand("export-problem", "Write a problem as JSON");
  add_problem_flags(exp, ov);
  add_common(exp, common);

  auto* anneal = app.add_subcommand("anneal", "Run anneals at one or more anneal times");
  add_problem_flags(anneal, ov);
  add_run_flags(anneal, ov, true);
  add_offset_flags(anneal, ov);
  add_common(anneal, common);

  auto* sweep = app.add_subcommand("sweep-offset", "Sweep one qubit's offset at a time");
  add_problem_flags(sweep, ov);
  add_run_flags(sweep, ov, false);
  add_offset_flags(sweep, ov);
  add_jobs_flag(sweep, ov);
  ov.add<std::string>(sweep, "--qubit", "1-based qubit or 'each'", [](auto& c, const auto& v) { c.qubits = v; });
  ov.add<std::string>(sweep, "--grid", "Offset grid lo:hi:step (default -0.9:1:0.05)",
                      [](auto& c, const auto& v) { c.sweep = parse_offset_grid(v); });
  add_common(sweep, common);

  auto* spectrum = app.add_subcommand("spectrum", "Lowest levels of H(s) and the minimum gap");
  add_problem_flags(spectrum, ov);
  add_offset_flags(spectrum, ov);
  add_spectrum_flags(spectrum, ov);
  add_jobs_flag(spectrum, ov);
  ov.add<double>(spectrum, "--ta", "Anneal time in ns (does not affect levels)",
                 [](auto& c, double v) { c.anneal_times = {v}; });
  add_common(spectrum, common);

  auto* tune = app.add_subcommand("tune", "Iteratively tune the anneal offsets");
  add_problem_flags(tune, ov);
  add_run_flags(tune, ov, false);
  add_spectrum_flags(tune, ov);
  add_jobs_flag(tune, ov);
  ov.add<std::string>(tune, "--method", "floppiness | sigma-average | kiefer-wolfowitz",
                      [](auto& c, const auto& v) { c.method = v; });
  ov.add<int>(tune, "--iterations", "Tuner iterations m", [](auto& c, int v) { c.iterations = v; });
  ov.add<double>(tune, "--alpha", "Static step size", [](auto& c, double v) { c.alpha = v; });
  ov.add<double>(tune, "--kw-sign", "-1 descends the average energy, +1 ascends",
                 [](auto& c, double v) { c.kw_sign = v; });
  ov.add<std::string>(tune, "--floppiness-source", "events | exact",
                      [](auto& c, const auto& v) { c.floppiness_source = v; });
  ov.add<std::vector<int>>(tune, "--spectrum-at", "Iterations whose offsets get a spectrum",
                           [](auto& c, const auto& v) { c.spectrum_at = v; })
      ->delimiter(',');
  ov.add<std::string>(tune, "--checkpoint", "Resume from this checkpoint",
                      [](auto& c, const auto& v) { c.checkpoint = v; });
  ov.flag(tune, "--allow-extreme-offsets", "Allow offsets down to -1 (exclusive)",
          [](auto& c) { c.allow_extreme_offsets = true; });
  add_common(tune, common);

  app.require_subcommand(0, 1);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  std::ostringstream usage;
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, console, usage);
    errors << usage.str();
    return code == 0 ? 0 : 1;
  }

  ExperimentConfig config;
  try {
    if (!common.config.empty()) {
      std::ifstream in(common.config, std::ios::binary);
      if (!in) throw UsageError("cannot read config " + common.config);
      std::ostringstream text;
      text << in.rdbuf();
      config = config_from_document(text.str());
    }
    const auto chosen = app.get_subcommands();
    if (!chosen.empty()) {
      const std::string name = chosen.front()->get_name();
      if (!common.config.empty() && config.command != name) {
        throw UsageError("config is for '" + config.command + "', not '" + name + "'");
      }
      config.command = name;
    } else if (common.config.empty()) {
      errors << app.help();
      return 1;
    }
    ov.apply(config);
  } catch (const std::exception& e) {
    errors << "annealpath: " << e.what() << '\n';
    return 1;
  }
  (void)list;
  return execute(config, common.out, console, errors);
}

}  // namespace annealpath::cli
