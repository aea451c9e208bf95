#include "yates/inference.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "yates/distributions.hpp"
#include "yates/errors.hpp"
#include "yates/random.hpp"

namespace yates {

TestResult f_test(const SumOfSquaresReport& report, const ModelFit& fit) {
  if (report.df == 0) {
    throw NoHypothesisDf("hypothesis has zero degrees of freedom");
  }
  if (fit.df_error == 0 || !fit.mse) {
    throw NoErrorDf("model is saturated; no error degrees of freedom");
  }
  TestResult t;
  t.ss_numerator = report.rmfm;
  t.df_numerator = report.df;
  t.ss_error = fit.sse;
  t.df_error = fit.df_error;
  t.ms_numerator = t.ss_numerator / static_cast<double>(t.df_numerator);
  t.mse = *fit.mse;
  t.method_agreement = report.max_discrepancy;
  if (t.mse > 0.0) {
    t.f_statistic = t.ms_numerator / t.mse;
    t.p_value = f_survival(t.f_statistic, static_cast<double>(t.df_numerator),
                           static_cast<double>(t.df_error));
  } else {
    // Perfect fit: any nonzero numerator is infinitely significant.
    t.f_statistic = t.ms_numerator > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    t.p_value = t.ms_numerator > 0.0 ? 0.0 : 1.0;
  }
  return t;
}

double noncentrality(const Matrix& x, const Matrix& p, std::span<const double> beta,
                     double sigma2) {
  if (!(sigma2 > 0.0)) throw std::invalid_argument("noncentrality requires sigma2 > 0");
  const auto mu = x * beta;
  return quadratic_form(p, mu) / sigma2;
}

SimulatedDraws chi_square_simulation(const Matrix& x, const Hypothesis& h,
                                     std::span<const double> beta, double sigma2,
                                     std::size_t n_draws, std::uint64_t seed, double tol) {
  if (!(sigma2 > 0.0)) throw std::invalid_argument("simulation requires sigma2 > 0");
  const Matrix hyp_basis = gram_schmidt(h.h, tol).basis;
  const OrthonormalBasis full = gram_schmidt(x, tol);
  const auto mean = x * beta;
  const double sigma = std::sqrt(sigma2);
  const std::size_t n = x.rows();

  SimulatedDraws out;
  out.df_numerator = hyp_basis.cols();
  out.df_error = n - full.rank;
  out.numerator.reserve(n_draws);
  out.error.reserve(n_draws);
  out.p_values.reserve(n_draws);

  Rng rng(seed);
  std::vector<double> y(n);
  for (std::size_t draw = 0; draw < n_draws; ++draw) {
    for (std::size_t i = 0; i < n; ++i) y[i] = mean[i] + sigma * rng.normal();
    const double ss = squared_norm(transpose_times(hyp_basis, y));
    const auto coords = transpose_times(full.basis, y);
    const auto fitted = full.basis * std::span<const double>(coords);
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) sse += (y[i] - fitted[i]) * (y[i] - fitted[i]);

    out.numerator.push_back(ss / sigma2);
    out.error.push_back(sse / sigma2);
    if (out.df_numerator > 0 && out.df_error > 0) {
      const double f = (ss / static_cast<double>(out.df_numerator)) /
                       (sse / static_cast<double>(out.df_error));
      out.p_values.push_back(f_survival(f, static_cast<double>(out.df_numerator),
                                        static_cast<double>(out.df_error)));
    }
  }
  return out;
}

}  // namespace yates
