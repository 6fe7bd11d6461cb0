#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "dagda/graph.hpp"
#include "dagda/mat.hpp"
#include "dagda/rng.hpp"

namespace dagda::fixtures {

inline Mat random_mat(Rng& rng, std::size_t rows, std::size_t cols, double lo = -1.0, double hi = 1.0) {
  Mat m(rows, cols);
  for (double& v : m.values()) v = rng.uniform(lo, hi);
  return m;
}

// Nonnegative class-attribute matrix whose rows and columns all have a
// positive entry.
inline Mat random_class_attr(Rng& rng, std::size_t classes, std::size_t attrs, double density = 0.5) {
  Mat c(classes, attrs);
  for (double& v : c.values()) v = rng.uniform() < density ? rng.uniform(0.1, 1.0) : 0.0;
  for (std::size_t i = 0; i < classes; ++i) c(i, rng.below(attrs)) = rng.uniform(0.1, 1.0);
  for (std::size_t j = 0; j < attrs; ++j) c(rng.below(classes), j) = rng.uniform(0.1, 1.0);
  return c;
}

// Plain triple loop, independent of the library's kernels.
inline Mat naive_matmul(const Mat& a, const Mat& b) {
  Mat out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      out(i, j) = s;
    }
  return out;
}

inline double max_abs_diff(const Mat& a, const Mat& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  return m;
}

inline double rel_diff(const Mat& a, const Mat& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a.values()[i] - b.values()[i];
    num += d * d;
    den += b.values()[i] * b.values()[i];
  }
  return std::sqrt(num) / std::max(std::sqrt(den), 1e-300);
}

inline Mat permutation_matrix(const std::vector<std::size_t>& perm) {
  Mat p(perm.size(), perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) p(i, perm[i]) = 1.0;
  return p;
}

}  // namespace dagda::fixtures
