#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "annealpath/problem.hpp"

namespace annealpath {

struct Literal {
  int variable = 0;  // zero-based
  bool negated = false;
};

struct Clause {
  Literal first;
  Literal second;
};

/// Conjunction of two-literal disjunctions.
class TwoSatFormula {
 public:
  TwoSatFormula(int n_vars, std::vector<Clause> clauses);

  int n_vars() const noexcept { return n_vars_; }
  const std::vector<Clause>& clauses() const noexcept { return clauses_; }

 private:
  int n_vars_;
  std::vector<Clause> clauses_;
};

struct CompiledFormula {
  ProblemInstance problem;
  /// Constant dropped from the expansion: classical_energy + dropped_constant
  /// equals the number of violated clauses.
  double dropped_constant = 0.0;
  /// Indices of clauses of the form (x or not x), which contribute nothing.
  std::vector<std::size_t> tautologies;
  std::vector<std::string> warnings;
};

/// Each clause adds a unit penalty on its single falsifying assignment,
/// expanded through x = (1 - z) / 2 into quarter-unit h and J terms.
CompiledFormula compile_2sat(const TwoSatFormula& formula, std::string label = "2sat");

}  // namespace annealpath
