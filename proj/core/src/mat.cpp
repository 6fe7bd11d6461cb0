#include "dagda/mat.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "dagda/errors.hpp"

namespace dagda {

Mat::Mat(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Mat::Mat(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw DimensionError("Mat: data length " + std::to_string(data_.size()) +
                         " does not match shape " + shape_str());
  }
}

Mat::Mat(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("Mat: ragged initializer list");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::string Mat::shape_str() const {
  return std::to_string(rows_) + "x" + std::to_string(cols_);
}

bool Mat::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

void Mat::ensure_finite(const char* what) const {
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i])) {
      throw NumericalError(std::string(what) + ": non-finite value at (" +
                           std::to_string(i / cols_) + "," + std::to_string(i % cols_) + ")");
    }
  }
}

void require_same_shape(const Mat& a, const Mat& b, const char* op) {
  if (!a.same_shape(b)) {
    throw DimensionError(std::string(op) + ": shape mismatch " + a.shape_str() + " vs " +
                         b.shape_str());
  }
}

Mat& Mat::operator+=(const Mat& other) {
  require_same_shape(*this, other, "add");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  ensure_finite("add");
  return *this;
}

Mat& Mat::operator-=(const Mat& other) {
  require_same_shape(*this, other, "subtract");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  ensure_finite("subtract");
  return *this;
}

Mat& Mat::operator*=(double s) {
  for (double& v : data_) v *= s;
  ensure_finite("scale");
  return *this;
}

Mat operator+(Mat a, const Mat& b) { return a += b; }
Mat operator-(Mat a, const Mat& b) { return a -= b; }
Mat operator*(Mat a, double s) { return a *= s; }
Mat operator*(double s, Mat a) { return a *= s; }

Mat matmul(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: inner dimensions differ, " + a.shape_str() + " x " +
                         b.shape_str());
  }
  const std::size_t n = a.rows(), inner = a.cols(), m = b.cols();
  Mat c(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    auto out = c.row(i);
    for (std::size_t k = 0; k < inner; ++k) {
      const double aik = a(i, k);
      auto brow = b.row(k);
      for (std::size_t j = 0; j < m; ++j) out[j] += aik * brow[j];
    }
  }
  c.ensure_finite("matmul");
  return c;
}

Mat matmul_tn(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) {
    throw DimensionError("matmul_tn: row counts differ, " + a.shape_str() + "^T x " +
                         b.shape_str());
  }
  const std::size_t n = a.cols(), inner = a.rows(), m = b.cols();
  Mat c(n, m);
  for (std::size_t k = 0; k < inner; ++k) {
    auto arow = a.row(k);
    auto brow = b.row(k);
    for (std::size_t i = 0; i < n; ++i) {
      const double aki = arow[i];
      auto out = c.row(i);
      for (std::size_t j = 0; j < m; ++j) out[j] += aki * brow[j];
    }
  }
  c.ensure_finite("matmul_tn");
  return c;
}

Mat matmul_nt(const Mat& a, const Mat& b) {
  if (a.cols() != b.cols()) {
    throw DimensionError("matmul_nt: column counts differ, " + a.shape_str() + " x " +
                         b.shape_str() + "^T");
  }
  const std::size_t n = a.rows(), inner = a.cols(), m = b.rows();
  Mat c(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    auto arow = a.row(i);
    for (std::size_t j = 0; j < m; ++j) {
      auto brow = b.row(j);
      double acc = 0.0;
      for (std::size_t k = 0; k < inner; ++k) acc += arow[k] * brow[k];
      c(i, j) = acc;
    }
  }
  c.ensure_finite("matmul_nt");
  return c;
}

Mat transpose(const Mat& a) {
  Mat t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

Mat hadamard(const Mat& a, const Mat& b) {
  require_same_shape(a, b, "hadamard");
  Mat c = a;
  auto cv = c.values();
  auto bv = b.values();
  for (std::size_t i = 0; i < cv.size(); ++i) cv[i] *= bv[i];
  c.ensure_finite("hadamard");
  return c;
}

double frob_norm_sq(const Mat& a) {
  double acc = 0.0;
  for (double v : a.values()) acc += v * v;
  return acc;
}

double frob_norm(const Mat& a) { return std::sqrt(frob_norm_sq(a)); }

double max_abs(const Mat& a) {
  double m = 0.0;
  for (double v : a.values()) m = std::max(m, std::abs(v));
  return m;
}

Mat row_block(const Mat& a, std::size_t begin, std::size_t count) {
  if (begin + count > a.rows()) {
    throw DimensionError("row_block: rows [" + std::to_string(begin) + "," +
                         std::to_string(begin + count) + ") out of range for " + a.shape_str());
  }
  Mat out(count, a.cols());
  std::copy_n(a.values().begin() + static_cast<std::ptrdiff_t>(begin * a.cols()),
              count * a.cols(), out.values().begin());
  return out;
}

Mat gather_rows(const Mat& a, std::span<const std::size_t> indices) {
  Mat out(indices.size(), a.cols());
  for (std::size_t r = 0; r < indices.size(); ++r) {
    if (indices[r] >= a.rows()) {
      throw DimensionError("gather_rows: index " + std::to_string(indices[r]) +
                           " out of range for " + a.shape_str());
    }
    std::copy_n(a.row(indices[r]).begin(), a.cols(), out.row(r).begin());
  }
  return out;
}

}  // namespace dagda
