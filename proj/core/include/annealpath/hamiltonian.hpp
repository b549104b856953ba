#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "annealpath/problem.hpp"
#include "annealpath/schedule.hpp"
#include "annealpath/state.hpp"

namespace annealpath {

struct ZZTerm {
  int i = 0;
  int j = 0;
  double coefficient = 0.0;  // multiplies -z_i z_j
};

/// H(s) = -sum_i A_i(s) X_i - sum_i B_i(s) C h_i Z_i - sum_{i<j} sqrt(B_i B_j) C J_ij Z_i Z_j.
/// Real symmetric; applied matrix-free, or materialized for small systems.
class InstantaneousHamiltonian {
 public:
  static constexpr int kDenseQubitLimit = 14;

  InstantaneousHamiltonian(const ProblemInstance& problem, const OffsetSchedule& schedule, double s);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dimension() const noexcept { return diagonal_.size(); }
  double anneal_fraction() const noexcept { return s_; }

  /// A_i(s), the transverse-field strengths.
  const std::vector<double>& transverse() const noexcept { return transverse_; }
  /// B_i(s) C h_i.
  const std::vector<double>& longitudinal() const noexcept { return longitudinal_; }
  const std::vector<ZZTerm>& zz_terms() const noexcept { return zz_terms_; }
  /// Diagonal (sigma^z) part of H in the computational basis.
  const std::vector<double>& diagonal() const noexcept { return diagonal_; }

  void apply(std::span<const double> in, std::span<double> out) const;
  void apply(std::span<const Complex> in, std::span<Complex> out) const;

  /// <psi|H|psi> for a normalized state.
  double expectation(const QuantumState& state) const;

  /// Throws InputError above kDenseQubitLimit qubits.
  Eigen::MatrixXd dense() const;

  /// Upper bound on the spectral radius (sum of absolute coefficients).
  double norm_bound() const noexcept { return norm_bound_; }

 private:
  int n_qubits_;
  double s_;
  std::vector<double> transverse_;
  std::vector<double> longitudinal_;
  std::vector<ZZTerm> zz_terms_;
  std::vector<double> diagonal_;
  double norm_bound_ = 0.0;
};

inline InstantaneousHamiltonian hamiltonian_at(const ProblemInstance& problem,
                                               const OffsetSchedule& schedule, double s) {
  return InstantaneousHamiltonian(problem, schedule, s);
}

}  // namespace annealpath
