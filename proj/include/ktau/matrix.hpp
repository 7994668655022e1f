#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ktau {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);
  // Builds from nested initializer data; all rows must have equal length.
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  Matrix transposed() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);

// aᵀb for a (n×p) and b (n×q); rows of the output are filled in parallel
// with a fixed summation order, so the result is thread-count independent.
Matrix transpose_times(const Matrix& a, const Matrix& b, unsigned threads = 0);

// Squared Frobenius norm, Tr(HᵀH).
double frobenius_sq(const Matrix& m);
double trace(const Matrix& m);
// Largest absolute entry.
double max_abs(const Matrix& m);
// Largest |M(r,c) - M(c,r)|; requires a square matrix.
double asymmetry(const Matrix& m);

}  // namespace ktau
