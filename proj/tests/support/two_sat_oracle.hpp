#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "annealpath/two_sat.hpp"

namespace annealpath::testing {

inline bool literal_true(const Literal& l, std::uint32_t assignment) {
  const bool x = ((assignment >> l.variable) & 1U) != 0;
  return l.negated ? !x : x;
}

inline int violated_clauses(const TwoSatFormula& f, std::uint32_t assignment) {
  int count = 0;
  for (const auto& c : f.clauses()) {
    if (!literal_true(c.first, assignment) && !literal_true(c.second, assignment)) ++count;
  }
  return count;
}

struct TruthTable {
  int min_violations = 0;
  std::vector<std::uint32_t> optimal;  // ascending
};

inline TruthTable truth_table(const TwoSatFormula& f) {
  TruthTable t;
  t.min_violations = static_cast<int>(f.clauses().size()) + 1;
  const std::uint32_t count = std::uint32_t{1} << f.n_vars();
  for (std::uint32_t a = 0; a < count; ++a) {
    const int v = violated_clauses(f, a);
    if (v < t.min_violations) {
      t.min_violations = v;
      t.optimal.clear();
    }
    if (v == t.min_violations) t.optimal.push_back(a);
  }
  return t;
}

inline TwoSatFormula random_formula(int n_vars, int n_clauses, std::mt19937_64& gen) {
  std::uniform_int_distribution<int> var(0, n_vars - 1);
  std::bernoulli_distribution neg(0.5);
  std::vector<Clause> clauses;
  for (int c = 0; c < n_clauses; ++c) {
    clauses.push_back({{var(gen), neg(gen)}, {var(gen), neg(gen)}});
  }
  return TwoSatFormula(n_vars, std::move(clauses));
}

/// Rejection-samples a formula whose truth table has (or lacks) a satisfying assignment.
inline TwoSatFormula random_formula_with(bool satisfiable, int n_vars, int n_clauses, std::mt19937_64& gen) {
  for (;;) {
    auto f = random_formula(n_vars, n_clauses, gen);
    if ((truth_table(f).min_violations == 0) == satisfiable) return f;
  }
}

}  // namespace annealpath::testing
