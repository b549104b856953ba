#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace annealpath {

using RealOperator = std::function<void(std::span<const double>, std::span<double>)>;

struct IterativeEigenOptions {
  int block_size = 0;        // 0: k + 6
  int krylov_blocks = 8;     // block Krylov depth between restarts
  int max_restarts = 300;
  double tolerance = 1e-10;  // residual norm, relative to max(1, |lambda|)
  std::uint64_t seed = 0x5eedULL;
  /// Optional start vectors (e.g. the Ritz block of a nearby operator). Missing
  /// columns are filled from the seeded generator.
  Eigen::MatrixXd start;
};

struct EigenResult {
  std::vector<double> values;  // ascending
  Eigen::MatrixXd vectors;     // columns match values
  Eigen::MatrixXd ritz_block;  // every retained Ritz vector, usable as a warm start
  int restarts = 0;
  bool converged = false;
};

/// k lowest eigenpairs of a dense symmetric matrix.
EigenResult lowest_eigenpairs_dense(const Eigen::MatrixXd& matrix, int k);

/// k lowest eigenpairs of a symmetric operator by thick-restarted block Lanczos
/// with full reorthogonalization. The block handles degenerate levels up to
/// its width. `converged` is false if max_restarts is exhausted.
EigenResult lowest_eigenpairs_iterative(const RealOperator& apply, std::size_t dimension, int k,
                                        const IterativeEigenOptions& options = {});

}  // namespace annealpath
