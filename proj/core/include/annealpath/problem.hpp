#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace annealpath {

/// Index of a computational basis state. Bit q holds qubit q's bit; bit 0 is
/// spin +1 and bit 1 is spin -1, so a bit reads directly as the Boolean
/// value x = (1 - z) / 2.
using BasisIndex = std::uint32_t;

inline constexpr int kMaxQubits = 20;

inline int spin_of(BasisIndex state, int qubit) noexcept {
  return ((state >> qubit) & 1U) ? -1 : +1;
}

inline BasisIndex flip(BasisIndex state, int qubit) noexcept {
  return state ^ (BasisIndex{1} << qubit);
}

struct Coupling {
  int i = 0;  // always i < j, zero-based
  int j = 0;
  double value = 0.0;
};

/// Diagonal Ising problem Hamiltonian
///   H_P = C * ( -sum_i h_i z_i - sum_{i<j} J_ij z_i z_j ).
/// Couplings are stored once per unordered pair. Explicit zero couplings are
/// kept so tabulated instances round-trip unchanged.
class ProblemInstance {
 public:
  ProblemInstance(int n_qubits, std::vector<double> fields, std::vector<Coupling> couplings,
                  double scale_c = 1.0, std::string label = {});

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dimension() const noexcept { return std::size_t{1} << n_qubits_; }
  const std::vector<double>& fields() const noexcept { return fields_; }
  const std::vector<Coupling>& couplings() const noexcept { return couplings_; }
  double scale_c() const noexcept { return scale_c_; }
  const std::string& label() const noexcept { return label_; }

  /// Symmetric lookup; zero when the pair has no entry.
  double coupling(int i, int j) const;
  bool has_coupling(int i, int j) const;

  ProblemInstance with_scale(double scale_c) const;

 private:
  int n_qubits_;
  std::vector<double> fields_;
  std::vector<Coupling> couplings_;
  double scale_c_;
  std::string label_;
};

/// E_P(z) including the scale factor C.
double classical_energy(const ProblemInstance& problem, BasisIndex state);

/// Same, for a textual bitstring whose k-th character is qubit k.
/// Throws InputError when the length differs from n_qubits.
double classical_energy(const ProblemInstance& problem, std::string_view bits);

/// Classical energies of every basis state, indexed by BasisIndex.
std::vector<double> diagonal_energies(const ProblemInstance& problem);

/// Renders qubit 0 first, e.g. "010" means qubit 1 (zero-based) is set.
std::string format_bits(BasisIndex state, int n_qubits);
BasisIndex parse_bits(std::string_view bits);

}  // namespace annealpath
