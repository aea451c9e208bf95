#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace yates {

/** Regularized incomplete beta function I_x(a, b), a, b > 0, x in [0, 1].
 *
 * Evaluated by a modified-Lentz continued fraction; for x > (a + 1) / (a + b + 2) the
 * symmetry I_x(a, b) = 1 - I_{1-x}(b, a) is used instead.
 */
double regularized_incomplete_beta(double x, double a, double b);

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double regularized_lower_gamma(double a, double x);

double chi_square_cdf(double x, double df);

double f_cdf(double f, double df1, double df2);

/// P(F > f) computed as I_{df2/(df2 + df1 f)}(df2/2, df1/2) so that small tails keep
/// their relative accuracy.
double f_survival(double f, double df1, double df2);

/// sup |F_n(x) - cdf(x)| for the empirical CDF of `sample`.
double ks_distance(std::span<const double> sample, const std::function<double(double)>& cdf);

/// Asymptotic one-sample Kolmogorov-Smirnov critical value at the 1% level, 1.63/sqrt(n).
double ks_critical_1pct(std::size_t n);

double pearson_correlation(std::span<const double> x, std::span<const double> y);

}  // namespace yates
