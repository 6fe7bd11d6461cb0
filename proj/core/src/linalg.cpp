#include "dagda/linalg.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "dagda/errors.hpp"

namespace dagda {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMajor> view(const Mat& m) {
  return {m.values().data(), static_cast<Eigen::Index>(m.rows()),
          static_cast<Eigen::Index>(m.cols())};
}

Mat from_eigen(const RowMajor& e) {
  Mat out(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
  Eigen::Map<RowMajor>(out.values().data(), e.rows(), e.cols()) = e;
  return out;
}

}  // namespace

Mat solve(const Mat& a, const Mat& b) {
  if (a.rows() != a.cols()) throw DimensionError("solve: matrix not square " + a.shape_str());
  if (a.rows() != b.rows()) {
    throw DimensionError("solve: " + a.shape_str() + " system with rhs " + b.shape_str());
  }
  const auto lhs = view(a);
  const auto rhs = view(b);
  RowMajor x;
  Eigen::LLT<Eigen::MatrixXd> llt(lhs);
  if (llt.info() == Eigen::Success) {
    x = llt.solve(rhs);
  } else {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(lhs);
    if (!lu.isInvertible()) throw NumericalError("solve: singular system");
    x = lu.solve(rhs);
  }
  Mat out = from_eigen(x);
  out.ensure_finite("solve");
  return out;
}

SymmetricEigen symmetric_eigen(const Mat& a) {
  if (a.rows() != a.cols()) {
    throw DimensionError("symmetric_eigen: matrix not square " + a.shape_str());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(view(a));
  if (solver.info() != Eigen::Success) {
    throw NumericalError("symmetric_eigen: decomposition failed");
  }
  const auto n = static_cast<Eigen::Index>(a.rows());
  SymmetricEigen out;
  out.values.resize(a.rows());
  out.vectors = Mat(a.rows(), a.cols());
  // Eigen returns ascending order.
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = n - 1 - k;
    out.values[static_cast<std::size_t>(k)] = solver.eigenvalues()(src);
    for (Eigen::Index i = 0; i < n; ++i) {
      out.vectors(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) =
          solver.eigenvectors()(i, src);
    }
  }
  return out;
}

}  // namespace dagda
