#include "annealpath/krylov.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "annealpath/errors.hpp"

namespace annealpath {

namespace {

Complex dot(std::span<const Complex> a, std::span<const Complex> b) {
  Complex s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm2(std::span<const Complex> a) {
  double s = 0.0;
  for (const auto& x : a) s += std::norm(x);
  return std::sqrt(s);
}

// One attempt; returns false if the error estimate never drops below tolerance.
bool try_step(const ComplexOperator& apply_h, double t, std::span<Complex> v,
              const KrylovOptions& options, int& applications) {
  const std::size_t n = v.size();
  const double beta0 = norm2(v);
  if (beta0 == 0.0) return true;

  std::vector<std::vector<Complex>> basis;
  basis.emplace_back(v.begin(), v.end());
  for (auto& x : basis[0]) x /= beta0;

  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<Complex> w(n);
  Eigen::VectorXcd coeffs;

  const int max_dim = std::min<int>(options.max_dimension, static_cast<int>(n));
  for (int j = 0; j < max_dim; ++j) {
    apply_h(basis[static_cast<std::size_t>(j)], w);
    ++applications;
    alpha.push_back(dot(basis[static_cast<std::size_t>(j)], w).real());
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        const Complex proj = dot(b, w);
        for (std::size_t i = 0; i < n; ++i) w[i] -= proj * b[i];
      }
    }
    const double next_beta = norm2(w);

    const int m = j + 1;
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (int k = 0; k < m; ++k) {
      tri(k, k) = alpha[static_cast<std::size_t>(k)];
      if (k + 1 < m) tri(k, k + 1) = tri(k + 1, k) = beta[static_cast<std::size_t>(k)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(tri);
    const Eigen::MatrixXd& q = eig.eigenvectors();
    Eigen::VectorXcd phase(m);
    for (int k = 0; k < m; ++k) {
      phase(k) = std::exp(Complex(0.0, -t * eig.eigenvalues()(k))) * q(0, k);
    }
    coeffs = q.cast<Complex>() * phase;

    const double error = beta0 * next_beta * std::abs(coeffs(m - 1));
    const bool invariant = next_beta <= 1e-14 * std::max(1.0, std::abs(alpha.back()));
    if (error <= options.tolerance || invariant || m == static_cast<int>(n)) {
      for (std::size_t i = 0; i < n; ++i) {
        Complex acc{};
        for (int k = 0; k < m; ++k) acc += coeffs(k) * basis[static_cast<std::size_t>(k)][i];
        v[i] = beta0 * acc;
      }
      return true;
    }
    beta.push_back(next_beta);
    for (auto& x : w) x /= next_beta;
    basis.push_back(w);
  }
  return false;
}

}  // namespace

int expm_krylov(const ComplexOperator& apply_h, double t, std::span<Complex> v,
                const KrylovOptions& options) {
  int applications = 0;
  if (try_step(apply_h, t, v, options, applications)) return applications;
  // Too stiff for one subspace: split in halves. Recursion depth is bounded by
  // the growth of the converged subspace as t shrinks.
  for (int half = 0; half < 2; ++half) {
    applications += expm_krylov(apply_h, 0.5 * t, v, options);
  }
  if (applications > 1'000'000) throw RuntimeFailure("Krylov exponential failed to converge");
  return applications;
}

}  // namespace annealpath
