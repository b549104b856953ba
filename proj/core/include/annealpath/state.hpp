#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace annealpath {

using Complex = std::complex<double>;

/// State vector over the computational basis; amplitude index bit q is qubit q.
class QuantumState {
 public:
  explicit QuantumState(int n_qubits);
  QuantumState(int n_qubits, std::vector<Complex> amplitudes);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dimension() const noexcept { return amplitudes_.size(); }

  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  std::span<Complex> amplitudes() noexcept { return amplitudes_; }
  Complex operator[](std::size_t i) const { return amplitudes_[i]; }

  double norm() const;
  double probability(std::size_t i) const { return std::norm(amplitudes_[i]); }
  std::vector<double> probabilities() const;

  /// |<this|other>|
  double overlap(const QuantumState& other) const;

 private:
  int n_qubits_;
  std::vector<Complex> amplitudes_;
};

/// Uniform superposition, the ground state of -sum_i sigma_i^x.
QuantumState initial_state(int n_qubits);

/// Pure computational basis state.
QuantumState basis_state(int n_qubits, std::size_t index);

}  // namespace annealpath
