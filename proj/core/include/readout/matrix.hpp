#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace readout {

/// Dense row-major matrix of doubles. Sized for the small (dim <= ~16)
/// generators and stochastic matrices used throughout the library.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> data() const { return data_; }

  Matrix transpose() const;

  /// Maximum absolute column sum.
  double norm1() const;
  double max_abs() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator*=(double s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator*(Matrix a, double s) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Largest entrywise absolute difference; matrices must have equal shape.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// exp(A) by scaling and squaring with a truncated Taylor series.
/// A is scaled by 2^-s until ||A/2^s||_1 < 0.5, the series is summed until
/// the next term's 1-norm drops below 1e-16, and the result is squared s times.
Matrix expm(const Matrix& a);

}  // namespace readout
