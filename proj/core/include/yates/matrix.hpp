#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace yates {

/** Dense real matrix with row-major storage.
 *
 * Every public constructor rejects NaN and infinite entries with NonFiniteValue.
 * Zero-sized dimensions are allowed: an n x 0 matrix represents the zero subspace of R^n.
 */
class Matrix {
 public:
  Matrix() = default;

  /// rows x cols matrix of zeros.
  Matrix(std::size_t rows, std::size_t cols);

  /// rows x cols matrix from row-major entries.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  /// Nested row list, e.g. `Matrix{{1, 2}, {3, 4}}`. All rows must have equal length.
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> values);
  /// n x 1 matrix holding `values`.
  static Matrix column_vector(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::vector<double> column(std::size_t j) const;
  const std::vector<double>& entries() const noexcept { return data_; }

  /// Columns [first, first + count).
  Matrix columns(std::size_t first, std::size_t count) const;

  Matrix transpose() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(Matrix m, double s);
Matrix operator*(double s, Matrix m);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);

/// Matrix-vector product.
std::vector<double> operator*(const Matrix& m, std::span<const double> v);

/// m' v without forming the transpose.
std::vector<double> transpose_times(const Matrix& m, std::span<const double> v);

/// Column concatenation (A, B).
Matrix hcat(const Matrix& lhs, const Matrix& rhs);

double trace(const Matrix& m);

/// Largest absolute entry; 0 for an empty matrix.
double max_abs(const Matrix& m);

/// Largest absolute row sum.
double norm_inf(const Matrix& m);

double dot(std::span<const double> x, std::span<const double> y);
double squared_norm(std::span<const double> x);

/// y' P y.
double quadratic_form(const Matrix& p, std::span<const double> y);

std::ostream& operator<<(std::ostream& os, const Matrix& m);

}  // namespace yates
