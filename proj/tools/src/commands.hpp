#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "annealpath/propagation.hpp"
#include "annealpath/sampler.hpp"

namespace annealpath::cli {

/// Bad flags, unreadable inputs, inconsistent settings. Exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OffsetGrid {
  double lo = -0.9;
  double hi = 1.0;
  double step = 0.05;

  std::vector<double> values() const;
};

/// Everything a command needs. Echoed into every output directory as
/// config.json; `--config` on that file reruns the same experiment.
struct ExperimentConfig {
  std::string command;
  std::string problem = "487";
  std::string problem_file;
  std::optional<double> scale_c;
  std::vector<double> anneal_times{5.0};
  double tau = 0.0;  // <= 0 selects min(t_a / 10000, 1e-3)
  std::string propagator = "suzuki-trotter-2";
  double angular_factor = kDefaultAngularFactor;
  std::size_t events = kDefaultEventsPerRun;
  std::uint64_t seed = 1;
  int record_points = 101;

  std::string method = "floppiness";
  int iterations = 40;
  double alpha = -0.02;
  double kw_sign = -1.0;
  std::string floppiness_source = "events";
  std::vector<int> spectrum_at;

  std::string qubits = "each";  // sweep-offset: "each" or a 1-based qubit
  OffsetGrid sweep;
  int grid_points = 201;
  int levels = 15;

  std::string offsets_file;
  std::string checkpoint;
  int iteration = -1;  // checkpoint iteration to read offsets from; -1 = final
  bool allow_extreme_offsets = false;
  int jobs = 0;  // <= 0 uses every core
};

std::string config_to_document(const ExperimentConfig& config);
ExperimentConfig config_from_document(const std::string& text);

/// Parses "lo:hi:step".
OffsetGrid parse_offset_grid(const std::string& text);

/// Runs one command. `out` is the final output directory (created atomically);
/// empty selects $ANNEALPATH_OUTPUT_ROOT (or ./runs) plus a generated name.
/// Returns the process exit code: 0 success, 1 usage error, 2 runtime failure.
int execute(const ExperimentConfig& config, const std::filesystem::path& out, std::ostream& console,
            std::ostream& errors);

/// Full command-line entry point.
int run_cli(const std::vector<std::string>& args, std::ostream& console, std::ostream& errors);

}  // namespace annealpath::cli
