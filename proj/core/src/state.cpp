#include "annealpath/state.hpp"

#include <cmath>

#include "annealpath/errors.hpp"
#include "annealpath/problem.hpp"

namespace annealpath {

namespace {
void check_qubits(int n) {
  if (n < 1 || n > kMaxQubits) throw InputError("qubit count out of range");
}
}  // namespace

QuantumState::QuantumState(int n_qubits) : n_qubits_(n_qubits) {
  check_qubits(n_qubits);
  amplitudes_.assign(std::size_t{1} << n_qubits, Complex{});
}

QuantumState::QuantumState(int n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  check_qubits(n_qubits);
  if (amplitudes_.size() != (std::size_t{1} << n_qubits)) {
    throw InputError("amplitude vector length does not match 2^n_qubits");
  }
}

double QuantumState::norm() const {
  double sum = 0.0;
  for (const auto& a : amplitudes_) sum += std::norm(a);
  return std::sqrt(sum);
}

std::vector<double> QuantumState::probabilities() const {
  std::vector<double> p(amplitudes_.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(amplitudes_[i]);
  return p;
}

double QuantumState::overlap(const QuantumState& other) const {
  if (other.dimension() != dimension()) throw InputError("state dimensions differ");
  Complex sum{};
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) sum += std::conj(amplitudes_[i]) * other.amplitudes_[i];
  return std::abs(sum);
}

QuantumState initial_state(int n_qubits) {
  QuantumState state(n_qubits);
  const double a = std::pow(2.0, -0.5 * n_qubits);
  for (auto& amp : state.amplitudes()) amp = Complex(a, 0.0);
  return state;
}

QuantumState basis_state(int n_qubits, std::size_t index) {
  QuantumState state(n_qubits);
  if (index >= state.dimension()) throw InputError("basis index out of range");
  state.amplitudes()[index] = 1.0;
  return state;
}

}  // namespace annealpath
