#include "annealpath/two_sat.hpp"

#include <map>
#include <utility>

#include "annealpath/errors.hpp"

namespace annealpath {

TwoSatFormula::TwoSatFormula(int n_vars, std::vector<Clause> clauses)
    : n_vars_(n_vars), clauses_(std::move(clauses)) {
  if (n_vars < 1 || n_vars > kMaxQubits) {
    throw InputError("2-SAT formula needs 1.." + std::to_string(kMaxQubits) + " variables");
  }
  for (const auto& c : clauses_) {
    for (const Literal& l : {c.first, c.second}) {
      if (l.variable < 0 || l.variable >= n_vars) {
        throw InputError("literal variable index out of range");
      }
    }
  }
}

namespace {

// Literal is false iff (1 + sign * z) / 2 == 1, with sign = +1 for x and -1 for not x.
int falsifying_sign(const Literal& l) { return l.negated ? -1 : +1; }

}  // namespace

CompiledFormula compile_2sat(const TwoSatFormula& formula, std::string label) {
  const int n = formula.n_vars();
  std::vector<double> h(static_cast<std::size_t>(n), 0.0);
  std::map<std::pair<int, int>, double> j_terms;
  double constant = 0.0;
  std::vector<std::size_t> tautologies;
  std::vector<std::string> warnings;

  // penalty = (1 + sa za)(1 + sb zb) / 4; H_P carries -h z and -J z z, hence the signs.
  for (std::size_t k = 0; k < formula.clauses().size(); ++k) {
    const Clause& c = formula.clauses()[k];
    const int a = c.first.variable;
    const int b = c.second.variable;
    const int sa = falsifying_sign(c.first);
    const int sb = falsifying_sign(c.second);
    if (a == b) {
      if (sa != sb) {
        tautologies.push_back(k);
        warnings.push_back("clause " + std::to_string(k + 1) + " is a tautology on variable " +
                           std::to_string(a + 1) + "; ignored");
        continue;
      }
      // (1 + s z)^2 / 4 = (1 + s z) / 2
      constant += 0.5;
      h[static_cast<std::size_t>(a)] -= 0.5 * sa;
      continue;
    }
    constant += 0.25;
    h[static_cast<std::size_t>(a)] -= 0.25 * sa;
    h[static_cast<std::size_t>(b)] -= 0.25 * sb;
    j_terms[{std::min(a, b), std::max(a, b)}] -= 0.25 * sa * sb;
  }

  std::vector<Coupling> couplings;
  for (const auto& [key, value] : j_terms) {
    if (value != 0.0) couplings.push_back({key.first, key.second, value});
  }
  return CompiledFormula{ProblemInstance(n, std::move(h), std::move(couplings), 1.0, std::move(label)),
                         constant, std::move(tautologies), std::move(warnings)};
}

}  // namespace annealpath
