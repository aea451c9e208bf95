#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "yates/design.hpp"
#include "yates/hypothesis.hpp"
#include "yates/matrix.hpp"
#include "yates/sumsquares.hpp"

namespace yates {

struct TestResult {
  double ss_numerator = 0.0;
  std::size_t df_numerator = 0;
  double ss_error = 0.0;
  std::size_t df_error = 0;
  double ms_numerator = 0.0;
  double mse = 0.0;
  double f_statistic = 0.0;
  double p_value = 1.0;
  /// max_discrepancy of the sum-of-squares report the test was built from.
  double method_agreement = 0.0;
};

/** F test of a hypothesis against the full-model error mean square.
 *
 * The numerator is the restricted-minus-full SSE value of the report. Throws
 * NoHypothesisDf when report.df == 0 and NoErrorDf when the fit is saturated.
 */
TestResult f_test(const SumOfSquaresReport& report, const ModelFit& fit);

/// beta' X' P X beta / sigma2.
double noncentrality(const Matrix& x, const Matrix& p, std::span<const double> beta,
                     double sigma2);

struct SimulatedDraws {
  /// y'(P_X - P_XN)y / sigma^2 for each draw.
  std::vector<double> numerator;
  /// SSE / sigma^2 for each draw.
  std::vector<double> error;
  /// F-test p-value for each draw.
  std::vector<double> p_values;
  std::size_t df_numerator = 0;
  std::size_t df_error = 0;
};

/** Draws y ~ N(X beta, sigma2 I) and records the scaled numerator and error sums of squares.
 *
 * Under the null (G'beta = 0) the numerator is chi-squared with df_numerator degrees of
 * freedom and independent of the error term.
 */
SimulatedDraws chi_square_simulation(const Matrix& x, const Hypothesis& h,
                                     std::span<const double> beta, double sigma2,
                                     std::size_t n_draws, std::uint64_t seed,
                                     double tol = kDefaultTolerance);

}  // namespace yates
