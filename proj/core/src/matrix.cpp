#include "yates/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "yates/errors.hpp"

namespace yates {
namespace {

void require_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw NonFiniteValue("matrix entries must be finite");
    }
  }
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch(std::string(what) + ": " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                            "x" + std::to_string(b.cols()));
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionMismatch("entry count " + std::to_string(data_.size()) + " != " +
                            std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  require_finite(data_);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw DimensionMismatch("ragged row list");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
  require_finite(data_);
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
  require_finite(values);
  Matrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

Matrix Matrix::column_vector(std::span<const double> values) {
  return Matrix(values.size(), 1, std::vector<double>(values.begin(), values.end()));
}

std::vector<double> Matrix::column(std::size_t j) const {
  std::vector<double> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

Matrix Matrix::columns(std::size_t first, std::size_t count) const {
  if (first + count > cols_) {
    throw DimensionMismatch("column range out of bounds");
  }
  Matrix out(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < count; ++j) out(i, j) = (*this)(i, first + j);
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  require_same_shape(*this, other, "matrix sum");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  require_same_shape(*this, other, "matrix difference");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
Matrix operator*(Matrix m, double s) { return m *= s; }
Matrix operator*(double s, Matrix m) { return m *= s; }

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.cols() != rhs.rows()) {
    throw DimensionMismatch("matrix product: " + std::to_string(lhs.rows()) + "x" +
                            std::to_string(lhs.cols()) + " times " +
                            std::to_string(rhs.rows()) + "x" + std::to_string(rhs.cols()));
  }
  Matrix out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const double a = lhs(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

std::vector<double> operator*(const Matrix& m, std::span<const double> v) {
  if (m.cols() != v.size()) {
    throw DimensionMismatch("matrix-vector product: " + std::to_string(m.cols()) +
                            " columns vs vector of length " + std::to_string(v.size()));
  }
  std::vector<double> out(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = dot(m.row(i), v);
  return out;
}

std::vector<double> transpose_times(const Matrix& m, std::span<const double> v) {
  if (m.rows() != v.size()) {
    throw DimensionMismatch("transpose product: " + std::to_string(m.rows()) +
                            " rows vs vector of length " + std::to_string(v.size()));
  }
  std::vector<double> out(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double vi = v[i];
    if (vi == 0.0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += m(i, j) * vi;
  }
  return out;
}

Matrix hcat(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.cols() == 0) return rhs;
  if (rhs.cols() == 0) return lhs;
  if (lhs.rows() != rhs.rows()) {
    throw DimensionMismatch("hcat: row counts differ");
  }
  Matrix out(lhs.rows(), lhs.cols() + rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (std::size_t j = 0; j < lhs.cols(); ++j) out(i, j) = lhs(i, j);
    for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, lhs.cols() + j) = rhs(i, j);
  }
  return out;
}

double trace(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("trace of non-square matrix");
  double t = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

double max_abs(const Matrix& m) {
  double best = 0.0;
  for (double v : m.entries()) best = std::max(best, std::abs(v));
  return best;
}

double norm_inf(const Matrix& m) {
  double best = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (double v : m.row(i)) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionMismatch("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double squared_norm(std::span<const double> x) { return dot(x, x); }

double quadratic_form(const Matrix& p, std::span<const double> y) {
  if (p.rows() != p.cols()) throw DimensionMismatch("quadratic form needs a square matrix");
  const auto py = p * y;
  return dot(y, py);
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i == 0 ? "[" : " [");
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j != 0) os << ", ";
      os << m(i, j);
    }
    os << ']';
    if (i + 1 < m.rows()) os << '\n';
  }
  return os << ']';
}

}  // namespace yates
