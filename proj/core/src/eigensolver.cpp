#include "annealpath/eigensolver.hpp"

#include <algorithm>
#include <cmath>

#include "annealpath/errors.hpp"
#include "annealpath/rng.hpp"

namespace annealpath {

EigenResult lowest_eigenpairs_dense(const Eigen::MatrixXd& matrix, int k) {
  if (matrix.rows() != matrix.cols()) throw InputError("matrix must be square");
  if (k < 1 || k > matrix.rows()) throw InputError("requested level count out of range");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(matrix);
  if (eig.info() != Eigen::Success) throw RuntimeFailure("dense eigensolver failed");
  EigenResult out;
  out.values.assign(eig.eigenvalues().data(), eig.eigenvalues().data() + k);
  out.vectors = eig.eigenvectors().leftCols(k);
  out.converged = true;
  return out;
}

namespace {

void apply_block(const RealOperator& apply, const Eigen::MatrixXd& in, Eigen::MatrixXd& out) {
  out.resize(in.rows(), in.cols());
  for (Eigen::Index c = 0; c < in.cols(); ++c) {
    apply(std::span<const double>(in.col(c).data(), static_cast<std::size_t>(in.rows())),
          std::span<double>(out.col(c).data(), static_cast<std::size_t>(in.rows())));
  }
}

// Orthonormalize the columns of w against `basis` (first `used` columns) and among
// themselves. Columns that collapse are dropped. Returns the retained columns.
// Block classical Gram-Schmidt twice against the basis, then modified
// Gram-Schmidt inside the block; a column that loses most of its norm there is
// projected against the basis once more.
Eigen::MatrixXd orthonormalize_against(const Eigen::MatrixXd& basis, Eigen::Index used,
                                       Eigen::MatrixXd w) {
  const Eigen::VectorXd input_norms = w.colwise().norm().transpose();
  if (used > 0) {
    const auto v = basis.leftCols(used);
    for (int pass = 0; pass < 2; ++pass) w.noalias() -= v * (v.transpose() * w);
  }
  Eigen::MatrixXd kept(w.rows(), w.cols());
  Eigen::Index count = 0;
  Eigen::VectorXd col(w.rows());
  for (Eigen::Index c = 0; c < w.cols(); ++c) {
    col = w.col(c);
    const double before = col.norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index p = 0; p < count; ++p) col -= kept.col(p).dot(col) * kept.col(p);
    }
    double after = col.norm();
    if (used > 0 && after < 0.5 * before) {
      const auto v = basis.leftCols(used);
      col.noalias() -= v * (v.transpose() * col);
      for (Eigen::Index p = 0; p < count; ++p) col -= kept.col(p).dot(col) * kept.col(p);
      after = col.norm();
    }
    if (after <= 1e-10 * std::max(input_norms(c), 1e-300) || after < 1e-250) continue;
    kept.col(count++) = col / after;
  }
  return kept.leftCols(count);
}

}  // namespace

EigenResult lowest_eigenpairs_iterative(const RealOperator& apply, std::size_t dimension, int k,
                                        const IterativeEigenOptions& options) {
  const auto n = static_cast<Eigen::Index>(dimension);
  if (k < 1 || k > n) throw InputError("requested level count out of range");
  const Eigen::Index block =
      std::min<Eigen::Index>(n, options.block_size > 0 ? options.block_size : k + 6);
  const Eigen::Index max_basis = std::min<Eigen::Index>(n, block * std::max(2, options.krylov_blocks));

  // Deterministic start block.
  if (options.start.cols() > 0 && options.start.rows() != n) {
    throw InputError("start vectors have the wrong dimension");
  }
  const Eigen::Index given = std::min<Eigen::Index>(block, options.start.cols());
  CounterRng rng(options.seed);
  Eigen::MatrixXd start(n, block);
  start.leftCols(given) = options.start.leftCols(given);
  for (Eigen::Index c = given; c < block; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) start(r, c) = rng.uniform() - 0.5;
  }

  Eigen::MatrixXd basis(n, max_basis);
  Eigen::MatrixXd h_basis(n, max_basis);
  Eigen::MatrixXd x = orthonormalize_against(basis, 0, start);
  Eigen::MatrixXd hx;
  apply_block(apply, x, hx);

  EigenResult out;
  for (int restart = 0; restart <= options.max_restarts; ++restart) {
    Eigen::Index used = x.cols();
    basis.leftCols(used) = x;
    h_basis.leftCols(used) = hx;
    Eigen::Index last_begin = 0;
    Eigen::Index last_size = used;

    while (used < max_basis) {
      Eigen::MatrixXd w = h_basis.middleCols(last_begin, last_size);
      Eigen::MatrixXd q = orthonormalize_against(basis, used, std::move(w));
      if (q.cols() == 0) break;  // invariant subspace
      const Eigen::Index take = std::min<Eigen::Index>(q.cols(), max_basis - used);
      Eigen::MatrixXd hq;
      Eigen::MatrixXd qt = q.leftCols(take);
      apply_block(apply, qt, hq);
      basis.middleCols(used, take) = qt;
      h_basis.middleCols(used, take) = hq;
      last_begin = used;
      last_size = take;
      used += take;
    }

    const auto v = basis.leftCols(used);
    const auto hv = h_basis.leftCols(used);
    Eigen::MatrixXd projected = v.transpose() * hv;
    projected = 0.5 * (projected + projected.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(projected);
    if (eig.info() != Eigen::Success) throw RuntimeFailure("projected eigenproblem failed");

    const Eigen::Index keep = std::min<Eigen::Index>(block, used);
    const Eigen::MatrixXd y = eig.eigenvectors().leftCols(keep);
    x = v * y;
    hx = hv * y;

    bool done = used == n;
    if (!done && keep >= k) {
      done = true;
      for (int m = 0; m < k; ++m) {
        const double theta = eig.eigenvalues()(m);
        const double residual = (hx.col(m) - theta * x.col(m)).norm();
        if (residual > options.tolerance * std::max(1.0, std::abs(theta))) {
          done = false;
          break;
        }
      }
    }
    out.restarts = restart;
    if (done || restart == options.max_restarts) {
      if (keep < k) throw RuntimeFailure("iterative eigensolver lost rank");
      out.converged = done;
      out.values.assign(eig.eigenvalues().data(), eig.eigenvalues().data() + k);
      out.vectors = x.leftCols(k);
      out.ritz_block = x;
      return out;
    }
    // Re-orthonormalize the thick-restart block to curb drift.
    Eigen::MatrixXd fresh = orthonormalize_against(basis, 0, x);
    if (fresh.cols() < keep) {
      x = std::move(fresh);
      apply_block(apply, x, hx);
    }
  }
  return out;
}

}  // namespace annealpath
