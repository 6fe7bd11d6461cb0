#pragma once

#include <vector>

#include "dagda/mat.hpp"

namespace dagda {

/// Solves a·x = b for x, a square. Uses a Cholesky factorization when a is
/// symmetric positive definite and falls back to pivoted LU otherwise.
/// Throws NumericalError if a is singular.
Mat solve(const Mat& a, const Mat& b);

struct SymmetricEigen {
  std::vector<double> values;  // descending
  Mat vectors;                 // column k pairs with values[k]
};

/// Eigendecomposition of a symmetric matrix, eigenvalues in descending order.
SymmetricEigen symmetric_eigen(const Mat& a);

}  // namespace dagda
