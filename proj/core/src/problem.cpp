#include "annealpath/problem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "annealpath/errors.hpp"

namespace annealpath {

ProblemInstance::ProblemInstance(int n_qubits, std::vector<double> fields,
                                 std::vector<Coupling> couplings, double scale_c, std::string label)
    : n_qubits_(n_qubits),
      fields_(std::move(fields)),
      scale_c_(scale_c),
      label_(std::move(label)) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw InputError("n_qubits must be in 1.." + std::to_string(kMaxQubits) + ", got " +
                     std::to_string(n_qubits));
  }
  if (static_cast<int>(fields_.size()) != n_qubits) {
    throw InputError("expected " + std::to_string(n_qubits) + " field values, got " +
                     std::to_string(fields_.size()));
  }
  if (!(scale_c > 0.0) || !std::isfinite(scale_c)) {
    throw InputError("scale_c must be positive and finite");
  }
  for (double h : fields_) {
    if (!std::isfinite(h)) throw InputError("field values must be finite");
  }

  couplings_.reserve(couplings.size());
  for (Coupling c : couplings) {
    if (c.i == c.j) {
      throw InputError("self-coupling on qubit " + std::to_string(c.i + 1));
    }
    if (c.i < 0 || c.j < 0 || c.i >= n_qubits || c.j >= n_qubits) {
      throw InputError("coupling index out of range");
    }
    if (!std::isfinite(c.value)) throw InputError("coupling values must be finite");
    if (c.i > c.j) std::swap(c.i, c.j);
    auto dup = std::find_if(couplings_.begin(), couplings_.end(),
                            [&](const Coupling& e) { return e.i == c.i && e.j == c.j; });
    if (dup != couplings_.end()) {
      throw InputError("coupling (" + std::to_string(c.i + 1) + "," + std::to_string(c.j + 1) +
                       ") listed twice");
    }
    couplings_.push_back(c);
  }
}

double ProblemInstance::coupling(int i, int j) const {
  if (i > j) std::swap(i, j);
  for (const auto& c : couplings_) {
    if (c.i == i && c.j == j) return c.value;
  }
  return 0.0;
}

bool ProblemInstance::has_coupling(int i, int j) const {
  if (i > j) std::swap(i, j);
  return std::any_of(couplings_.begin(), couplings_.end(),
                     [&](const Coupling& c) { return c.i == i && c.j == j; });
}

ProblemInstance ProblemInstance::with_scale(double scale_c) const {
  return ProblemInstance(n_qubits_, fields_, couplings_, scale_c, label_);
}

double classical_energy(const ProblemInstance& problem, BasisIndex state) {
  double e = 0.0;
  const auto& h = problem.fields();
  for (int q = 0; q < problem.n_qubits(); ++q) e -= h[q] * spin_of(state, q);
  for (const auto& c : problem.couplings()) e -= c.value * spin_of(state, c.i) * spin_of(state, c.j);
  return problem.scale_c() * e;
}

double classical_energy(const ProblemInstance& problem, std::string_view bits) {
  if (static_cast<int>(bits.size()) != problem.n_qubits()) {
    throw InputError("bitstring has length " + std::to_string(bits.size()) + ", expected " +
                     std::to_string(problem.n_qubits()));
  }
  return classical_energy(problem, parse_bits(bits));
}

std::vector<double> diagonal_energies(const ProblemInstance& problem) {
  const std::size_t dim = problem.dimension();
  const int n = problem.n_qubits();
  std::vector<double> energies(dim, 0.0);
  // Accumulate term by term; each term is a +-coefficient pattern over the index.
  for (int q = 0; q < n; ++q) {
    const double h = problem.fields()[q];
    if (h == 0.0) continue;
    for (std::size_t x = 0; x < dim; ++x) energies[x] -= h * spin_of(static_cast<BasisIndex>(x), q);
  }
  for (const auto& c : problem.couplings()) {
    if (c.value == 0.0) continue;
    for (std::size_t x = 0; x < dim; ++x) {
      const auto b = static_cast<BasisIndex>(x);
      energies[x] -= c.value * spin_of(b, c.i) * spin_of(b, c.j);
    }
  }
  for (double& e : energies) e *= problem.scale_c();
  return energies;
}

std::string format_bits(BasisIndex state, int n_qubits) {
  std::string out(static_cast<std::size_t>(n_qubits), '0');
  for (int q = 0; q < n_qubits; ++q) {
    if ((state >> q) & 1U) out[static_cast<std::size_t>(q)] = '1';
  }
  return out;
}

BasisIndex parse_bits(std::string_view bits) {
  if (bits.size() > static_cast<std::size_t>(kMaxQubits)) {
    throw InputError("bitstring longer than " + std::to_string(kMaxQubits) + " qubits");
  }
  BasisIndex state = 0;
  for (std::size_t q = 0; q < bits.size(); ++q) {
    if (bits[q] == '1') {
      state |= BasisIndex{1} << q;
    } else if (bits[q] != '0') {
      throw InputError("bitstring may contain only '0' and '1'");
    }
  }
  return state;
}

}  // namespace annealpath
