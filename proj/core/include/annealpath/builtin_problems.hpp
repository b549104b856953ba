#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "annealpath/problem.hpp"

namespace annealpath {

/// Labels of the tabulated 12-qubit 2-SAT instances: "487", "26", "301".
std::vector<std::string> builtin_labels();

/// Throws InputError for an unknown label.
ProblemInstance builtin(std::string_view label);

}  // namespace annealpath
