#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "annealpath/problem.hpp"

namespace annealpath {

// Problem documents are JSON objects:
//   { "label": "487", "n_qubits": 12, "h": [...],
//     "couplings": [[i, j, value], ...],   // one-based indices
//     "scale_c": 1.0 }                      // optional

std::string problem_to_document(const ProblemInstance& problem);
ProblemInstance problem_from_document(const std::string& text);

void write_problem_file(const ProblemInstance& problem, const std::filesystem::path& path);
ProblemInstance read_problem_file(const std::filesystem::path& path);

}  // namespace annealpath
