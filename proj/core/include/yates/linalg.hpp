#pragma once

#include <cstddef>
#include <optional>

#include "yates/matrix.hpp"

namespace yates {

/// Relative rank tolerance shared by every rank decision in the library.
inline constexpr double kDefaultTolerance = 1e-10;

/// Orthonormal basis of the column space of a source matrix.
struct OrthonormalBasis {
  std::size_t source_cols = 0;
  /// Columns are orthonormal; ambient dimension = rows of the source.
  Matrix basis;
  std::size_t rank = 0;
  double tolerance = kDefaultTolerance;
};

/** Two-pass Gram-Schmidt on the columns of `m`.
 *
 * A column is dropped as dependent when the norm of its residual after both
 * orthogonalization passes is <= tol * max(original column norm, scale), or tol * 1 if
 * both are 0. The kept columns appear in source order.
 *
 * `scale` matters for products such as XN: a column that cancels to rounding noise is
 * only recognized as zero when compared with the size of X.
 */
OrthonormalBasis gram_schmidt(const Matrix& m, double tol = kDefaultTolerance,
                              double scale = 0.0);

/// P_M = B B' with B = gram_schmidt(m, tol, scale).basis.
Matrix projector(const Matrix& m, double tol = kDefaultTolerance, double scale = 0.0);

/// Largest Euclidean column norm.
double max_column_norm(const Matrix& m);

/** Orthonormal basis of sp(M)^perp in R^ambient_dim.
 *
 * `m` must have `ambient_dim` rows unless it has no columns, in which case it stands for
 * the zero subspace. The result always has ambient_dim - rank(m) columns.
 */
Matrix complement_basis(const Matrix& m, std::size_t ambient_dim, double tol = kDefaultTolerance);

/** Moore-Penrose inverse of a symmetric nonnegative-definite matrix.
 *
 * With B an orthonormal basis of sp(M), M = B (B'MB) B' and the pseudoinverse is
 * B (B'MB)^{-1} B'. Throws NotSymmetric when |M - M'| exceeds tol * (1 + max|M|).
 */
Matrix g_inverse(const Matrix& m, double tol = kDefaultTolerance);

/// Inverse of a symmetric positive-definite matrix by Cholesky; nullopt when not pd or
/// when a pivot falls below 1e-13 of its diagonal entry.
std::optional<Matrix> spd_inverse(const Matrix& m);

/// Symmetric square root via eigendecomposition, eigenvalues floored at 0.
Matrix symmetric_sqrt(const Matrix& d);

/// (D^{1/2})^{-1}; throws SingularD when D has a nonpositive eigenvalue.
Matrix symmetric_inverse_sqrt(const Matrix& d);

/// A (x) B: each entry a_ij of A replaced by the block a_ij * B.
Matrix kronecker(const Matrix& a, const Matrix& b);

/// 1_m as an m x 1 matrix.
Matrix ones(std::size_t m);

/// U_m = (1/m) 1_m 1_m'.
Matrix averaging(std::size_t m);

/// S_m = I_m - U_m.
Matrix centering(std::size_t m);

}  // namespace yates
