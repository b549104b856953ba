#pragma once

#include <functional>
#include <span>

#include "annealpath/state.hpp"

namespace annealpath {

using ComplexOperator = std::function<void(std::span<const Complex>, std::span<Complex>)>;

struct KrylovOptions {
  double tolerance = 1e-13;  // absolute error estimate on the result vector
  int max_dimension = 40;
};

/// Replaces v by exp(-i t H) v for a Hermitian H, using a Lanczos basis with
/// full reorthogonalization. Steps that do not converge within max_dimension
/// are split into halves. Returns the number of operator applications.
int expm_krylov(const ComplexOperator& apply_h, double t, std::span<Complex> v,
                const KrylovOptions& options = {});

}  // namespace annealpath
