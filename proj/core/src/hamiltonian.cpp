#include "annealpath/hamiltonian.hpp"

#include <cmath>

#include "annealpath/errors.hpp"

namespace annealpath {

InstantaneousHamiltonian::InstantaneousHamiltonian(const ProblemInstance& problem,
                                                   const OffsetSchedule& schedule, double s)
    : n_qubits_(problem.n_qubits()), s_(s) {
  if (schedule.n_qubits() != problem.n_qubits()) {
    throw InputError("schedule and problem disagree on the qubit count");
  }
  const auto n = static_cast<std::size_t>(n_qubits_);
  const double c = problem.scale_c();
  std::vector<double> b(n);
  schedule.eval_b_all(s, b);

  transverse_.resize(n);
  longitudinal_.resize(n);
  for (std::size_t q = 0; q < n; ++q) {
    transverse_[q] = 1.0 - b[q];
    longitudinal_[q] = b[q] * c * problem.fields()[q];
    norm_bound_ += std::abs(transverse_[q]) + std::abs(longitudinal_[q]);
  }
  for (const auto& cp : problem.couplings()) {
    if (cp.value == 0.0) continue;
    const double w = schedule.coupling_weight(cp.i, cp.j, s);
    zz_terms_.push_back({cp.i, cp.j, w * c * cp.value});
    norm_bound_ += std::abs(zz_terms_.back().coefficient);
  }

  const std::size_t dim = problem.dimension();
  diagonal_.assign(dim, 0.0);
  for (std::size_t x = 0; x < dim; ++x) {
    const auto z = static_cast<BasisIndex>(x);
    double e = 0.0;
    for (std::size_t q = 0; q < n; ++q) e -= longitudinal_[q] * spin_of(z, static_cast<int>(q));
    for (const auto& t : zz_terms_) e -= t.coefficient * spin_of(z, t.i) * spin_of(z, t.j);
    diagonal_[x] = e;
  }
}

namespace {

template <typename T>
void apply_impl(const InstantaneousHamiltonian& h, std::span<const T> in, std::span<T> out) {
  const std::size_t dim = h.dimension();
  if (in.size() != dim || out.size() != dim) throw InputError("vector size does not match Hamiltonian");
  const auto& diag = h.diagonal();
  for (std::size_t x = 0; x < dim; ++x) out[x] = diag[x] * in[x];
  const auto& a = h.transverse();
  for (int q = 0; q < h.n_qubits(); ++q) {
    const double aq = a[static_cast<std::size_t>(q)];
    if (aq == 0.0) continue;
    const std::size_t mask = std::size_t{1} << q;
    for (std::size_t x = 0; x < dim; ++x) out[x] -= aq * in[x ^ mask];
  }
}

}  // namespace

void InstantaneousHamiltonian::apply(std::span<const double> in, std::span<double> out) const {
  apply_impl<double>(*this, in, out);
}

void InstantaneousHamiltonian::apply(std::span<const Complex> in, std::span<Complex> out) const {
  apply_impl<Complex>(*this, in, out);
}

double InstantaneousHamiltonian::expectation(const QuantumState& state) const {
  const auto psi = state.amplitudes();
  if (psi.size() != dimension()) throw InputError("state dimension does not match Hamiltonian");
  double e = 0.0;
  for (std::size_t x = 0; x < psi.size(); ++x) e += diagonal_[x] * std::norm(psi[x]);
  for (int q = 0; q < n_qubits_; ++q) {
    const double aq = transverse_[static_cast<std::size_t>(q)];
    if (aq == 0.0) continue;
    const std::size_t mask = std::size_t{1} << q;
    double xq = 0.0;
    for (std::size_t x = 0; x < psi.size(); ++x) {
      if (x & mask) continue;
      xq += 2.0 * (std::conj(psi[x]) * psi[x | mask]).real();
    }
    e -= aq * xq;
  }
  return e;
}

Eigen::MatrixXd InstantaneousHamiltonian::dense() const {
  if (n_qubits_ > kDenseQubitLimit) {
    throw InputError("dense materialization is limited to " + std::to_string(kDenseQubitLimit) +
                     " qubits");
  }
  const auto dim = static_cast<Eigen::Index>(dimension());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index x = 0; x < dim; ++x) {
    m(x, x) = diagonal_[static_cast<std::size_t>(x)];
    for (int q = 0; q < n_qubits_; ++q) {
      m(x, x ^ (Eigen::Index{1} << q)) -= transverse_[static_cast<std::size_t>(q)];
    }
  }
  return m;
}

}  // namespace annealpath
