#include "yates/sumsquares.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "yates/errors.hpp"

namespace yates {
namespace {

// P_B v for an orthonormal basis B.
std::vector<double> project(const Matrix& basis, std::span<const double> v) {
  const auto coords = transpose_times(basis, v);
  return basis * std::span<const double>(coords);
}

// Forms that are mathematically >= 0 can land a few ulps below zero.
double clamp_rounding(double v) { return std::max(v, 0.0); }

}  // namespace

double ss_geometric(const Matrix& x, const Matrix& n, std::span<const double> y, double tol) {
  const auto fitted = project(gram_schmidt(x, tol).basis, y);
  const auto restricted = project(gram_schmidt(x * n, tol, max_column_norm(x)).basis, fitted);
  double dist = 0.0;
  for (std::size_t i = 0; i < fitted.size(); ++i) {
    const double r = fitted[i] - restricted[i];
    dist += r * r;
  }
  return dist;
}

double ss_rmfm(const Matrix& x, const Matrix& n, std::span<const double> y, double tol) {
  const ModelFit restricted = fit(x * n, y, tol, max_column_norm(x));
  const ModelFit full = fit(x, y, tol);
  return clamp_rounding(restricted.sse - full.sse);
}

double ss_pearson(const Matrix& h, std::span<const double> y, double tol) {
  const auto hy = transpose_times(h, y);
  const Matrix gram_inv = g_inverse(h.transpose() * h, tol);
  return clamp_rounding(quadratic_form(gram_inv, hy));
}

double ss_yates_general(const YatesDecomposition& yd, std::span<const double> y, double tol) {
  const auto u = transpose_times(yd.a, y);
  const auto d_inv = spd_inverse(yd.d);
  if (!d_inv) {
    throw SingularD("D = A'A is not positive definite; columns of A are dependent");
  }
  const auto d_inv_u = *d_inv * std::span<const double>(u);
  const auto m_d_inv_u = transpose_times(yd.m, d_inv_u);
  const Matrix weight = yd.m.transpose() * *d_inv * yd.m;
  const double restricted_part = quadratic_form(g_inverse(weight, tol), m_d_inv_u);
  return clamp_rounding(dot(u, d_inv_u) - restricted_part);
}

double ss_mwsm(const Dataset& d, Effect effect, std::span<const double> y) {
  if (effect == Effect::AB) {
    throw std::invalid_argument("weighted squares of means applies to main effects only");
  }
  if (y.size() != d.n_total()) {
    throw DimensionMismatch("response length does not match the dataset");
  }
  std::vector<double> cell_sum(d.n_cells(), 0.0);
  for (std::size_t s = 0; s < y.size(); ++s) cell_sum[d.cell_of(s)] += y[s];

  const bool by_a = effect == Effect::A;
  const std::size_t levels = by_a ? d.a() : d.b();
  const std::size_t across = by_a ? d.b() : d.a();
  const double across_d = static_cast<double>(across);

  std::vector<double> u(levels, 0.0);
  std::vector<double> w(levels, 0.0);
  for (std::size_t l = 0; l < levels; ++l) {
    double mean_sum = 0.0;
    double inv_count_sum = 0.0;
    for (std::size_t o = 0; o < across; ++o) {
      const std::size_t cell = by_a ? d.cell_index(l, o) : d.cell_index(o, l);
      const double n = static_cast<double>(d.counts()[cell]);
      mean_sum += cell_sum[cell] / n;
      inv_count_sum += 1.0 / n;
    }
    u[l] = mean_sum / across_d;
    w[l] = across_d * across_d / inv_count_sum;
  }

  double w_total = 0.0;
  double wu_total = 0.0;
  for (std::size_t l = 0; l < levels; ++l) {
    w_total += w[l];
    wu_total += w[l] * u[l];
  }
  const double u_bar = wu_total / w_total;
  double q = 0.0;
  for (std::size_t l = 0; l < levels; ++l) q += w[l] * (u[l] - u_bar) * (u[l] - u_bar);
  return q;
}

bool SumOfSquaresReport::agrees(double rel_tol) const {
  return max_discrepancy <= rel_tol * (1.0 + geometric);
}

SumOfSquaresReport sum_of_squares(const Matrix& x, const Hypothesis& h,
                                  const YatesDecomposition& yd, std::span<const double> y,
                                  std::optional<double> mwsm, double tol) {
  SumOfSquaresReport r;
  r.geometric = ss_geometric(x, h.n, y, tol);
  r.rmfm = ss_rmfm(x, h.n, y, tol);
  r.pearson = ss_pearson(h.h, y, tol);
  r.yates_general = ss_yates_general(yd, y, tol);
  r.mwsm = mwsm;
  r.df = h.df;

  std::vector<double> forms{r.geometric, r.rmfm, r.pearson, r.yates_general};
  if (mwsm) forms.push_back(*mwsm);
  const auto [lo, hi] = std::minmax_element(forms.begin(), forms.end());
  r.max_discrepancy = *hi - *lo;
  return r;
}

SumOfSquaresReport sum_of_squares(const Matrix& x, const Hypothesis& h,
                                  std::span<const double> y, double tol) {
  return sum_of_squares(x, h, orthonormal_decomposition(x, h, tol), y, std::nullopt, tol);
}

SumOfSquaresReport sum_of_squares(const Dataset& d, Effect effect, std::span<const double> y,
                                  double tol) {
  const TwoFactorHypothesis tf = two_factor_hypothesis(d, effect, tol);
  std::optional<double> mwsm;
  if (effect != Effect::AB) mwsm = ss_mwsm(d, effect, y);
  return sum_of_squares(cell_means_design(d), tf.hypothesis, tf.yates, y, mwsm, tol);
}

}  // namespace yates
