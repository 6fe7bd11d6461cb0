#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace dagda {

/// Dense row-major double-precision matrix.
///
/// Every public arithmetic operation checks that its result is finite and
/// throws NumericalError otherwise; shape mismatches throw DimensionError.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, double fill = 0.0);
  Mat(std::size_t rows, std::size_t cols, std::vector<double> data);
  Mat(std::initializer_list<std::initializer_list<double>> rows);

  static Mat zeros(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }
  static Mat identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }

  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }
  const std::vector<double>& data() const noexcept { return data_; }

  std::string shape_str() const;
  bool same_shape(const Mat& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }
  bool all_finite() const noexcept;

  // Throws NumericalError naming `what` when any entry is NaN or Inf.
  void ensure_finite(const char* what) const;

  Mat& operator+=(const Mat& other);
  Mat& operator-=(const Mat& other);
  Mat& operator*=(double s);

  friend bool operator==(const Mat& a, const Mat& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);
Mat operator*(Mat a, double s);
Mat operator*(double s, Mat a);

/// a·b. Each output cell is accumulated over k in ascending order, so the
/// result is bitwise reproducible.
Mat matmul(const Mat& a, const Mat& b);
/// aᵀ·b without materializing the transpose.
Mat matmul_tn(const Mat& a, const Mat& b);
/// a·bᵀ without materializing the transpose.
Mat matmul_nt(const Mat& a, const Mat& b);

Mat transpose(const Mat& a);
Mat hadamard(const Mat& a, const Mat& b);

double frob_norm_sq(const Mat& a);
double frob_norm(const Mat& a);
double max_abs(const Mat& a);

// Copy of rows [begin, begin+count).
Mat row_block(const Mat& a, std::size_t begin, std::size_t count);
// Rows picked by index, in order.
Mat gather_rows(const Mat& a, std::span<const std::size_t> indices);

// Throws DimensionError when shapes differ.
void require_same_shape(const Mat& a, const Mat& b, const char* op);

}  // namespace dagda
