#include "yates/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "yates/errors.hpp"

namespace yates {
namespace {

using Column = std::vector<double>;

constexpr double kPivotFloor = 1e-13;

// Removes the components of v along each (orthonormal) q, twice.
void orthogonalize(Column& v, const std::vector<Column>& q) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& qk : q) {
      const double c = dot(qk, v);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * qk[i];
    }
  }
}

Matrix from_columns(std::size_t rows, const std::vector<Column>& cols) {
  Matrix out(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t i = 0; i < rows; ++i) out(i, j) = cols[j][i];
  }
  return out;
}

std::vector<Column> orthonormal_columns(const Matrix& m, double tol, double floor = 0.0) {
  std::vector<Column> q;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Column v = m.column(j);
    const double original = std::sqrt(squared_norm(v));
    orthogonalize(v, q);
    const double residual = std::sqrt(squared_norm(v));
    const double reference = std::max(original, floor);
    const double scale = reference > 0.0 ? reference : 1.0;
    if (residual <= tol * scale) continue;
    for (double& x : v) x /= residual;
    q.push_back(std::move(v));
  }
  return q;
}

Eigen::MatrixXd to_eigen(const Matrix& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  }
  return e;
}

Matrix from_eigen(const Eigen::MatrixXd& e) {
  Matrix m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
  for (Eigen::Index i = 0; i < e.rows(); ++i) {
    for (Eigen::Index j = 0; j < e.cols(); ++j) {
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = e(i, j);
    }
  }
  return m;
}

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch(std::string(what) + " needs a square matrix");
  }
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigen_of(const Matrix& d) {
  require_square(d, "symmetric square root");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_eigen(d));
  if (solver.info() != Eigen::Success) {
    throw Error("eigendecomposition failed");
  }
  return solver;
}

}  // namespace

OrthonormalBasis gram_schmidt(const Matrix& m, double tol, double scale) {
  const auto q = orthonormal_columns(m, tol, scale);
  return OrthonormalBasis{m.cols(), from_columns(m.rows(), q), q.size(), tol};
}

Matrix projector(const Matrix& m, double tol, double scale) {
  const Matrix b = gram_schmidt(m, tol, scale).basis;
  return b * b.transpose();
}

double max_column_norm(const Matrix& m) {
  double out = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j) out = std::max(out, std::sqrt(squared_norm(m.column(j))));
  return out;
}

Matrix complement_basis(const Matrix& m, std::size_t ambient_dim, double tol) {
  if (m.cols() != 0 && m.rows() != ambient_dim) {
    throw DimensionMismatch("complement_basis: matrix has " + std::to_string(m.rows()) +
                            " rows, ambient dimension is " + std::to_string(ambient_dim));
  }
  std::vector<Column> q = m.cols() == 0 ? std::vector<Column>{} : orthonormal_columns(m, tol);
  std::vector<Column> added;
  std::vector<bool> used(ambient_dim, false);

  // Greedily extend with the coordinate axis whose residual is largest; this always
  // yields exactly ambient_dim - rank new directions.
  while (q.size() < ambient_dim) {
    Column best;
    double best_norm = -1.0;
    std::size_t best_axis = 0;
    for (std::size_t axis = 0; axis < ambient_dim; ++axis) {
      if (used[axis]) continue;
      Column v(ambient_dim, 0.0);
      v[axis] = 1.0;
      orthogonalize(v, q);
      const double norm = std::sqrt(squared_norm(v));
      if (norm > best_norm) {
        best_norm = norm;
        best = std::move(v);
        best_axis = axis;
      }
    }
    used[best_axis] = true;
    for (double& x : best) x /= best_norm;
    q.push_back(best);
    added.push_back(std::move(best));
  }
  return from_columns(ambient_dim, added);
}

Matrix g_inverse(const Matrix& m, double tol) {
  require_square(m, "g_inverse");
  const double scale = 1.0 + max_abs(m);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - m(j, i)) > tol * scale) {
        throw NotSymmetric("g_inverse: input is not symmetric");
      }
    }
  }
  const OrthonormalBasis basis = gram_schmidt(m, tol);
  if (basis.rank == 0) return Matrix(m.rows(), m.cols());

  const Matrix& b = basis.basis;
  Matrix core = b.transpose() * m * b;
  // Symmetrize before factoring.
  for (std::size_t i = 0; i < core.rows(); ++i) {
    for (std::size_t j = i + 1; j < core.cols(); ++j) {
      const double avg = 0.5 * (core(i, j) + core(j, i));
      core(i, j) = avg;
      core(j, i) = avg;
    }
  }
  const auto core_inv = spd_inverse(core);
  if (!core_inv) {
    throw Error("g_inverse: input is not nonnegative definite");
  }
  return b * *core_inv * b.transpose();
}

std::optional<Matrix> spd_inverse(const Matrix& m) {
  require_square(m, "spd_inverse");
  const std::size_t n = m.rows();
  // Cholesky m = L L'.
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = m(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
    // A pivot this small relative to its diagonal entry is rounding residue of a
    // dependent column (residual norm below ~3e-7 of the column norm).
    if (!(diag > kPivotFloor * m(j, j))) return std::nullopt;
    l(j, j) = std::sqrt(diag);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  // Solve L L' X = I column by column.
  Matrix inv(n, n);
  std::vector<double> z(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = (i == c) ? 1.0 : 0.0;
      for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * z[k];
      z[i] = s / l(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
      double s = z[ii];
      for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * inv(k, c);
      inv(ii, c) = s / l(ii, ii);
    }
  }
  return inv;
}

Matrix symmetric_sqrt(const Matrix& d) {
  const auto solver = eigen_of(d);
  Eigen::VectorXd roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXd& v = solver.eigenvectors();
  return from_eigen(v * roots.asDiagonal() * v.transpose());
}

Matrix symmetric_inverse_sqrt(const Matrix& d) {
  const auto solver = eigen_of(d);
  const Eigen::VectorXd& values = solver.eigenvalues();
  if (values.size() > 0 && !(values.minCoeff() > 0.0)) {
    throw SingularD("symmetric_inverse_sqrt: matrix is not positive definite");
  }
  Eigen::VectorXd inv_roots = values.cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd& v = solver.eigenvectors();
  return from_eigen(v * inv_roots.asDiagonal() * v.transpose());
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
      }
    }
  }
  return out;
}

Matrix ones(std::size_t m) { return Matrix(m, 1, std::vector<double>(m, 1.0)); }

Matrix averaging(std::size_t m) {
  return Matrix(m, m, std::vector<double>(m * m, 1.0 / static_cast<double>(m)));
}

Matrix centering(std::size_t m) { return Matrix::identity(m) - averaging(m); }

}  // namespace yates
