#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "yates/design.hpp"
#include "yates/hypothesis.hpp"
#include "yates/linalg.hpp"
#include "yates/matrix.hpp"

namespace yates {

/// Relative agreement tolerance between the numerator sum-of-squares formulations.
inline constexpr double kDefaultAgreementTolerance = 1e-8;

/// Squared distance from the fitted mean P_X y to the restricted model sp(XN),
/// i.e. y'(P_X - P_XN)y.
double ss_geometric(const Matrix& x, const Matrix& n, std::span<const double> y,
                    double tol = kDefaultTolerance);

/// SSE of the restricted model sp(XN) minus SSE of the full model sp(X), from two
/// independent least-squares fits.
double ss_rmfm(const Matrix& x, const Matrix& n, std::span<const double> y,
               double tol = kDefaultTolerance);

/// (H'y)' (H'H)^- (H'y): the chi-squared form (G'b)' [Var(G'b)/sigma^2]^- (G'b).
double ss_pearson(const Matrix& h, std::span<const double> y, double tol = kDefaultTolerance);

/** Residual sum of squares of the restricted model for the standardized marginal means:
 *
 *   u' (D^-1 - D^-1 M (M' D^-1 M)^- M' D^-1) u,   u = A'y.
 *
 * Throws SingularD when D = A'A is not positive definite.
 */
double ss_yates_general(const YatesDecomposition& yd, std::span<const double> y,
                        double tol = kDefaultTolerance);

/** Yates's weighted squares of means for a main effect, by scalar arithmetic only.
 *
 * For effect A: u_i = (1/b) sum_j ybar_ij, w_i = b^2 / sum_j (1/n_ij),
 * ubar = sum w_i u_i / sum w_i and Q = sum w_i (u_i - ubar)^2. B is symmetric.
 * Throws std::invalid_argument for Effect::AB.
 */
double ss_mwsm(const Dataset& d, Effect effect, std::span<const double> y);

struct SumOfSquaresReport {
  double geometric = 0.0;
  double rmfm = 0.0;
  double pearson = 0.0;
  double yates_general = 0.0;
  /// Present only for two-factor main effects.
  std::optional<double> mwsm;
  std::size_t df = 0;
  /// Largest pairwise absolute difference among the present forms.
  double max_discrepancy = 0.0;

  /// max_discrepancy <= rel_tol * (1 + geometric).
  bool agrees(double rel_tol = kDefaultAgreementTolerance) const;
};

/// Every formulation for a two-factor effect, with y aligned to the dataset's observations.
SumOfSquaresReport sum_of_squares(const Dataset& d, Effect effect, std::span<const double> y,
                                  double tol = kDefaultTolerance);

/// Every formulation that applies to a general hypothesis; the Yates form uses
/// orthonormal_decomposition.
SumOfSquaresReport sum_of_squares(const Matrix& x, const Hypothesis& h,
                                  std::span<const double> y, double tol = kDefaultTolerance);

/// Same, with a caller-supplied decomposition and optional MWSM value.
SumOfSquaresReport sum_of_squares(const Matrix& x, const Hypothesis& h,
                                  const YatesDecomposition& yd, std::span<const double> y,
                                  std::optional<double> mwsm, double tol = kDefaultTolerance);

}  // namespace yates
