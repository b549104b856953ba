#include "annealpath/problem_io.hpp"

#include <fstream>
#include <sstream>

#include "annealpath/errors.hpp"
#include "json.hpp"

namespace annealpath {

using nlohmann::json;

std::string problem_to_document(const ProblemInstance& problem) {
  json doc;
  doc["label"] = problem.label();
  doc["n_qubits"] = problem.n_qubits();
  doc["h"] = problem.fields();
  json couplings = json::array();
  for (const auto& c : problem.couplings()) couplings.push_back({c.i + 1, c.j + 1, c.value});
  doc["couplings"] = std::move(couplings);
  doc["scale_c"] = problem.scale_c();
  return doc.dump(2) + "\n";
}

ProblemInstance problem_from_document(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("problem document is not valid JSON: ") + e.what());
  }
  try {
    const int n = doc.at("n_qubits").get<int>();
    auto h = doc.at("h").get<std::vector<double>>();
    std::vector<Coupling> couplings;
    for (const auto& row : doc.at("couplings")) {
      if (!row.is_array() || row.size() != 3) {
        throw InputError("each coupling must be [i, j, value]");
      }
      couplings.push_back({row[0].get<int>() - 1, row[1].get<int>() - 1, row[2].get<double>()});
    }
    const double scale = doc.value("scale_c", 1.0);
    std::string label = doc.value("label", std::string{});
    return ProblemInstance(n, std::move(h), std::move(couplings), scale, std::move(label));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed problem document: ") + e.what());
  }
}

void write_problem_file(const ProblemInstance& problem, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw RuntimeFailure("cannot open " + path.string() + " for writing");
  out << problem_to_document(problem);
}

ProblemInstance read_problem_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read problem file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return problem_from_document(buf.str());
}

}  // namespace annealpath
