#include "annealpath/export.hpp"

#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "annealpath/errors.hpp"
#include "json.hpp"

namespace annealpath {

using nlohmann::json;

namespace {

// Fixed significant digits so reruns are byte-identical and files stay readable.
class CsvRow {
 public:
  explicit CsvRow(std::ostream& out) : out_(out) { out_ << std::setprecision(12); }
  template <typename T>
  CsvRow& operator<<(const T& value) {
    if (!first_) out_ << ',';
    out_ << value;
    first_ = false;
    return *this;
  }
  ~CsvRow() { out_ << '\n'; }

 private:
  std::ostream& out_;
  bool first_ = true;
};

}  // namespace

std::string units_comment(const OutputUnits& units) {
  std::ostringstream s;
  s << std::setprecision(17) << "# energy_unit=GHz time_unit=ns angular_factor=" << units.angular_factor;
  return s.str();
}

void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryPoint> points, const OutputUnits& units) {
  out << units_comment(units) << '\n';
  CsvRow(out) << "s" << "avg_energy_GHz" << "ground_population";
  for (const auto& p : points) CsvRow(out) << p.s << p.avg_energy << p.ground_population;
}

void write_spectrum_csv(std::ostream& out, const SpectrumTrace& trace, const OutputUnits& units) {
  out << units_comment(units) << '\n';
  const std::size_t k = trace.levels.empty() ? 0 : trace.levels.front().size();
  {
    CsvRow header(out);
    header << "s";
    for (std::size_t m = 0; m < k; ++m) header << "level_" + std::to_string(m) + "_GHz";
    if (trace.avg_energy) header << "avg_energy_GHz";
  }
  for (std::size_t g = 0; g < trace.grid.size(); ++g) {
    CsvRow row(out);
    row << trace.grid[g];
    for (double v : trace.levels[g]) row << v;
    if (trace.avg_energy) row << (*trace.avg_energy)[g];
  }
}

void write_events_csv(std::ostream& out, std::span<const BasisIndex> events, const ProblemInstance& problem,
                      const OutputUnits& units) {
  std::map<BasisIndex, std::size_t> counts;
  for (BasisIndex z : events) ++counts[z];
  out << units_comment(units) << '\n';
  CsvRow(out) << "bitstring" << "energy_GHz" << "count";
  for (const auto& [z, c] : counts) {
    CsvRow(out) << format_bits(z, problem.n_qubits()) << classical_energy(problem, z) << c;
  }
}

void write_tuner_csv(std::ostream& out, const TunerTrajectory& trajectory, const OutputUnits& units) {
  out << units_comment(units) << '\n';
  const std::size_t n = trajectory.final_offsets.size();
  {
    CsvRow header(out);
    header << "k" << "success_probability" << "final_avg_energy_GHz";
    for (std::size_t q = 0; q < n; ++q) header << "gamma_" + std::to_string(q + 1);
    for (std::size_t q = 0; q < n; ++q) header << "mu_" + std::to_string(q + 1);
  }
  for (const auto& r : trajectory.records) {
    CsvRow row(out);
    row << r.k << r.success_probability << r.final_avg_energy;
    for (double g : r.offsets) row << g;
    for (std::size_t q = 0; q < n; ++q) row << (q < r.floppiness.size() ? r.floppiness[q] : 0.0);
  }
}

std::string report_to_document(const RunReport& report, const ProblemInstance& problem, const OutputUnits& units) {
  json doc;
  doc["problem"] = problem.label();
  doc["energy_unit"] = "GHz";
  doc["time_unit"] = "ns";
  doc["angular_factor"] = units.angular_factor;
  doc["seed"] = report.seed;
  doc["n_events"] = report.n_events;
  doc["success_probability"] = report.success_probability;
  doc["empirical_success"] = report.empirical_success;
  doc["final_avg_energy_GHz"] = report.final_avg_energy;
  doc["exact_avg_energy_GHz"] = report.exact_avg_energy;
  doc["sigma_z_avg"] = report.sigma_z_avg;
  doc["floppiness"] = report.floppiness;
  doc["floppiness_empty"] = report.floppiness_empty;
  doc["first_excited_events"] = report.first_excited_events;
  doc["exact_floppiness"] = report.exact_floppiness;
  return doc.dump(2) + "\n";
}

namespace {

json report_summary(const RunReport& r) {
  return json{{"seed", r.seed},
              {"success_probability", r.success_probability},
              {"final_avg_energy", r.final_avg_energy},
              {"floppiness", r.floppiness},
              {"floppiness_empty", r.floppiness_empty},
              {"sigma_z_avg", r.sigma_z_avg}};
}

RunReport summary_report(const json& j) {
  RunReport r;
  r.seed = j.at("seed").get<std::uint64_t>();
  r.success_probability = j.at("success_probability").get<double>();
  r.final_avg_energy = j.at("final_avg_energy").get<double>();
  r.floppiness = j.at("floppiness").get<std::vector<double>>();
  r.floppiness_empty = j.at("floppiness_empty").get<bool>();
  r.sigma_z_avg = j.at("sigma_z_avg").get<std::vector<double>>();
  return r;
}

}  // namespace

std::string trajectory_to_checkpoint(const TunerTrajectory& trajectory) {
  json doc;
  doc["method"] = std::string(to_string(trajectory.method));
  doc["anneal_runs"] = trajectory.anneal_runs;
  doc["final_offsets"] = trajectory.final_offsets;
  json records = json::array();
  for (const auto& r : trajectory.records) {
    json rec{{"k", r.k},
             {"offsets", r.offsets},
             {"success_probability", r.success_probability},
             {"final_avg_energy", r.final_avg_energy},
             {"floppiness", r.floppiness},
             {"statistic", r.statistic},
             {"flagged", r.flagged}};
    if (r.report) rec["report"] = report_summary(*r.report);
    if (!r.probes.empty()) {
      json probes = json::array();
      for (const auto& p : r.probes) {
        probes.push_back({{"qubit", p.qubit},
                          {"direction", p.direction},
                          {"offset", p.offset},
                          {"clamped", p.clamped},
                          {"report", report_summary(p.report)}});
      }
      rec["probes"] = std::move(probes);
    }
    if (r.spectrum) rec["min_gap"] = {{"s", r.spectrum->min_gap.s}, {"gap", r.spectrum->min_gap.gap}};
    records.push_back(std::move(rec));
  }
  doc["records"] = std::move(records);
  return doc.dump(1) + "\n";
}

TunerTrajectory trajectory_from_checkpoint(const std::string& text) {
  try {
    const json doc = json::parse(text);
    TunerTrajectory t;
    t.method = parse_tuner_method(doc.at("method").get<std::string>());
    t.anneal_runs = doc.at("anneal_runs").get<std::size_t>();
    t.final_offsets = doc.at("final_offsets").get<std::vector<double>>();
    for (const auto& rec : doc.at("records")) {
      TunerRecord r;
      r.k = rec.at("k").get<int>();
      r.offsets = rec.at("offsets").get<std::vector<double>>();
      r.success_probability = rec.at("success_probability").get<double>();
      r.final_avg_energy = rec.at("final_avg_energy").get<double>();
      r.floppiness = rec.at("floppiness").get<std::vector<double>>();
      r.statistic = rec.at("statistic").get<std::vector<double>>();
      r.flagged = rec.at("flagged").get<bool>();
      if (rec.contains("report")) r.report = summary_report(rec.at("report"));
      if (rec.contains("probes")) {
        for (const auto& p : rec.at("probes")) {
          ProbeRecord pr;
          pr.qubit = p.at("qubit").get<int>();
          pr.direction = p.at("direction").get<int>();
          pr.offset = p.at("offset").get<double>();
          pr.clamped = p.at("clamped").get<bool>();
          pr.report = summary_report(p.at("report"));
          r.probes.push_back(std::move(pr));
        }
      }
      t.records.push_back(std::move(r));
    }
    return t;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed checkpoint: ") + e.what());
  }
}

}  // namespace annealpath
