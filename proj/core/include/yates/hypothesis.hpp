#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "yates/design.hpp"
#include "yates/linalg.hpp"
#include "yates/matrix.hpp"

namespace yates {

/** Linear hypothesis H0: G'beta = 0 about an estimable function in the model sp(X).
 *
 * `n` is an orthonormal basis of sp(G)^perp in R^k, so the restricted model is sp(XN).
 * `h` has columns in sp(X) with X'H = G, which makes P_H = P_X - P_XN.
 */
struct Hypothesis {
  Matrix g;
  Matrix n;
  Matrix h;
  std::size_t df = 0;
};

/** Matrices mimicking the weighted-squares-of-means construction.
 *
 * `a` has linearly independent columns in sp(X), X'AC = G, sp(M) = sp(C)^perp and
 * D = A'A is positive definite. A'y are the "marginal means" that the sum of squares
 * is built from.
 */
struct YatesDecomposition {
  Matrix a;
  Matrix c;
  Matrix m;
  Matrix d;
};

/** Validates estimability and derives N, H and the degrees of freedom.
 *
 * Throws DimensionMismatch when rows(G) != cols(X), ZeroHypothesis when G = 0 and
 * NotEstimable when some column of G lies outside sp(X') by more than tol relative to
 * its norm.
 */
Hypothesis make_hypothesis(const Matrix& x, const Matrix& g, double tol = kDefaultTolerance);

/// P_X - P_XN.
Matrix hypothesis_projector(const Matrix& x, const Hypothesis& h, double tol = kDefaultTolerance);

/** Decomposition usable for any estimable hypothesis.
 *
 * A = V, an orthonormal basis of sp(X), and C = V'H. Then X'AC = X'P_X H = G, D = I and
 * M spans sp(V'H)^perp in R^rank(X).
 */
YatesDecomposition orthonormal_decomposition(const Matrix& x, const Hypothesis& h,
                                             double tol = kDefaultTolerance);

enum class Effect { A, B, AB };

std::string_view to_string(Effect e);
std::optional<Effect> parse_effect(std::string_view text);

struct TwoFactorHypothesis {
  Hypothesis hypothesis;
  YatesDecomposition yates;
};

/** Hypothesis of no A main effects, no B main effects, or no AB interaction in the
 * cell-means model X = K.
 *
 * Main effects are equalities of unweighted marginal means of the cell means:
 *   A:  G = (1/b)(S_a (x) 1_b),  A = (1/b) K D_ab (I_a (x) 1_b),  C = S_a,  M = 1_a
 *   B:  G = (1/a)(1_a (x) S_b),  A = (1/a) K D_ab (1_a (x) I_b),  C = S_b,  M = 1_b
 *   AB: G = S_a (x) S_b,         A = K D_ab,                      C = G,    M = sp(C)^perp
 * D = A'A in every case; for A it is (1/b^2) Diag(sum_j 1/n_ij).
 */
TwoFactorHypothesis two_factor_hypothesis(const Dataset& d, Effect effect,
                                          double tol = kDefaultTolerance);

/// u = A'y.
std::vector<double> marginal_mean_estimates(const YatesDecomposition& yd,
                                            std::span<const double> y);

}  // namespace yates
