#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "support/test_support.hpp"
#include "yates/errors.hpp"
#include "yates/sumsquares.hpp"

using namespace yates;
using yates::testing::max_abs_diff;
using yates::testing::normal_vector;
using yates::testing::oracle_rmfm;
using yates::testing::random_dataset;
using yates::testing::worked_dataset;

namespace {

constexpr double kSsA = 64.0 / 3.0;
constexpr double kSsB = 16.0 / 3.0;

std::vector<double> responses(const Dataset& d) {
  return {d.responses().begin(), d.responses().end()};
}

}  // namespace

TEST_CASE("worked layout: the independent oracle confirms the fixture first") {
  const Dataset d = worked_dataset();
  const Matrix k = cell_means_design(d);
  const auto y = responses(d);
  CHECK(oracle_rmfm(k, two_factor_hypothesis(d, Effect::A).hypothesis.g, y) ==
        doctest::Approx(kSsA).epsilon(1e-12));
  CHECK(oracle_rmfm(k, two_factor_hypothesis(d, Effect::B).hypothesis.g, y) ==
        doctest::Approx(kSsB).epsilon(1e-12));
  CHECK(std::abs(oracle_rmfm(k, two_factor_hypothesis(d, Effect::AB).hypothesis.g, y)) < 1e-12);
  // Yates's arithmetic: w = (8/3, 8/3), u = (3, 7), ubar = 5.
  CHECK((8.0 / 3.0) * 4.0 + (8.0 / 3.0) * 4.0 == doctest::Approx(kSsA));
}

TEST_CASE("worked layout: every formulation of SS_A equals 64/3") {
  const Dataset d = worked_dataset();
  const Matrix k = cell_means_design(d);
  const auto y = responses(d);
  const TwoFactorHypothesis tf = two_factor_hypothesis(d, Effect::A);
  CHECK(ss_rmfm(k, tf.hypothesis.n, y) == doctest::Approx(kSsA).epsilon(1e-12));
  CHECK(ss_geometric(k, tf.hypothesis.n, y) == doctest::Approx(kSsA).epsilon(1e-12));
  CHECK(ss_pearson(tf.hypothesis.h, y) == doctest::Approx(kSsA).epsilon(1e-12));
  CHECK(ss_yates_general(tf.yates, y) == doctest::Approx(kSsA).epsilon(1e-12));
  CHECK(ss_mwsm(d, Effect::A, y) == doctest::Approx(kSsA).epsilon(1e-14));

  const SumOfSquaresReport r = sum_of_squares(d, Effect::A, y);
  CHECK(r.df == 1);
  REQUIRE(r.mwsm.has_value());
  CHECK(r.agrees());
  CHECK(r.max_discrepancy <= 1e-8 * (1.0 + kSsA));
}

TEST_CASE("worked layout: B and AB") {
  const Dataset d = worked_dataset();
  const auto y = responses(d);
  const SumOfSquaresReport b = sum_of_squares(d, Effect::B, y);
  CHECK(b.rmfm == doctest::Approx(kSsB).epsilon(1e-12));
  CHECK(*b.mwsm == doctest::Approx(kSsB).epsilon(1e-12));
  CHECK(b.agrees());
  const SumOfSquaresReport ab = sum_of_squares(d, Effect::AB, y);
  CHECK_FALSE(ab.mwsm.has_value());
  CHECK(ab.rmfm < 1e-12);
  CHECK(ab.geometric < 1e-12);
  CHECK(ab.df == 1);
}

TEST_CASE("geometric form edge cases") {
  const Dataset d = worked_dataset();
  const Matrix k = cell_means_design(d);
  const Hypothesis h = two_factor_hypothesis(d, Effect::A).hypothesis;

  SUBCASE("data in the restricted model") {
    const std::vector<double> gamma{1.5, -0.5, 2.0};
    REQUIRE(h.n.cols() == 3);
    const auto beta = h.n * std::span<const double>(gamma);
    const auto y = k * std::span<const double>(beta);
    CHECK(ss_geometric(k, h.n, y) < 1e-20);
    CHECK(ss_rmfm(k, h.n, y) < 1e-12);
  }
  SUBCASE("whole-model hypothesis") {
    const auto y = responses(d);
    const Hypothesis whole = make_hypothesis(k, Matrix::identity(4));
    CHECK(whole.n.cols() == 0);
    const auto fitted = fit(k, y).fitted;
    CHECK(ss_geometric(k, whole.n, y) == doctest::Approx(squared_norm(fitted)));
  }
}

TEST_CASE("RMFM form edge cases") {
  SUBCASE("balanced 2x2 single replicate") {
    const Dataset d({{"1", "1", 1}, {"1", "2", 1}, {"2", "1", 2}, {"2", "2", 2}});
    const Hypothesis h = two_factor_hypothesis(d, Effect::A).hypothesis;
    // Hand ANOVA: row means 1 and 2, grand mean 1.5, SS_A = 2 * 2 * 0.25 = 1.
    CHECK(ss_rmfm(cell_means_design(d), h.n, d.responses()) == doctest::Approx(1.0));
  }
  SUBCASE("restricted model equal to the full model") {
    const Dataset d = worked_dataset();
    CHECK(ss_rmfm(cell_means_design(d), Matrix::identity(4), d.responses()) == 0.0);
  }
}

TEST_CASE("Pearson form edge cases") {
  const Dataset d = worked_dataset();
  const Hypothesis h = two_factor_hypothesis(d, Effect::A).hypothesis;

  SUBCASE("data orthogonal to sp(H)") {
    const Matrix comp = complement_basis(h.h, d.n_total());
    const auto y = comp.column(0);
    CHECK(ss_pearson(h.h, y) < 1e-20);
  }
  SUBCASE("single contrast reduces to a squared t numerator") {
    const Matrix h1 = h.h.columns(0, 1);
    const auto y = responses(d);
    const double hy = dot(h1.column(0), y);
    const double hh = squared_norm(h1.column(0));
    CHECK(ss_pearson(h1, y) == doctest::Approx(hy * hy / hh));
  }
}

TEST_CASE("generalized Yates form edge cases") {
  const Dataset d = worked_dataset();
  SUBCASE("equal marginal means give zero") {
    // Cell means (2, 4, 4, 2): both A marginal means are 3.
    const std::vector<double> y{1, 3, 4, 4, 1, 3};
    CHECK(ss_yates_general(two_factor_hypothesis(d, Effect::A).yates, y) < 1e-12);
    CHECK(ss_mwsm(d, Effect::A, y) < 1e-24);
  }
  SUBCASE("identity weights reduce to u'(I - P_M)u") {
    YatesDecomposition yd;
    yd.a = Matrix{{1, 0}, {0, 1}, {0, 0}};
    yd.c = centering(2);
    yd.m = ones(2);
    yd.d = Matrix::identity(2);
    const std::vector<double> y{1.0, 4.0, 9.0};
    const double expected = quadratic_form(centering(2), std::vector<double>{1.0, 4.0});
    CHECK(ss_yates_general(yd, y) == doctest::Approx(expected));
  }
  SUBCASE("dependent columns of A are rejected") {
    YatesDecomposition yd;
    yd.a = Matrix{{1, 2}, {1, 2}};
    yd.c = centering(2);
    yd.m = ones(2);
    yd.d = yd.a.transpose() * yd.a;
    CHECK_THROWS_AS(ss_yates_general(yd, std::vector<double>{1, 2}), SingularD);
  }
}

TEST_CASE("weighted squares of means arithmetic") {
  SUBCASE("AB is not a main effect") {
    const Dataset d = worked_dataset();
    CHECK_THROWS_AS(ss_mwsm(d, Effect::AB, d.responses()), std::invalid_argument);
  }
  SUBCASE("balanced layouts reduce to n b sum (row mean - grand mean)^2") {
    Rng rng(8);
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t a = rng.integer(2, 4);
      const std::size_t b = rng.integer(2, 4);
      const std::size_t n = rng.integer(1, 5);
      const Dataset d = random_dataset(rng, a, b, n, n);
      const auto y = d.responses();
      std::vector<double> row(a, 0.0);
      double grand = 0.0;
      for (std::size_t s = 0; s < y.size(); ++s) {
        row[d.cell_of(s) / b] += y[s] / static_cast<double>(n * b);
        grand += y[s] / static_cast<double>(y.size());
      }
      double classical = 0.0;
      for (double r : row) classical += static_cast<double>(n * b) * (r - grand) * (r - grand);
      CHECK(ss_mwsm(d, Effect::A, y) == doctest::Approx(classical).epsilon(1e-10));
      CHECK(ss_rmfm(cell_means_design(d), two_factor_hypothesis(d, Effect::A).hypothesis.n, y) ==
            doctest::Approx(classical).epsilon(1e-9));
    }
  }
}

TEST_CASE("all formulations agree on random unbalanced layouts") {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const Dataset d = random_dataset(rng, rng.integer(2, 4), rng.integer(2, 4), 1, 5);
    const auto y = responses(d);
    const Matrix k = cell_means_design(d);
    for (Effect e : {Effect::A, Effect::B, Effect::AB}) {
      CAPTURE(trial);
      CAPTURE(to_string(e));
      const SumOfSquaresReport r = sum_of_squares(d, e, y);
      CHECK(r.max_discrepancy <= 1e-8 * (1.0 + r.geometric));
      CHECK(r.mwsm.has_value() == (e != Effect::AB));
      CHECK(r.geometric >= 0.0);
      const double oracle = oracle_rmfm(k, two_factor_hypothesis(d, e).hypothesis.g, y);
      CHECK(std::abs(r.rmfm - oracle) <= 1e-8 * (1.0 + oracle));
    }
  }
}

TEST_CASE("general-model path agrees with the RMFM oracle") {
  Rng rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = rng.integer(6, 14);
    const std::size_t k = rng.integer(3, 6);
    const std::size_t rank = rng.integer(2, k);
    const Matrix x = testing::random_matrix(rng, n, rank) * testing::random_matrix(rng, rank, k);
    const Matrix g = x.transpose() * testing::random_matrix(rng, n, rng.integer(1, 3));
    const Hypothesis h = make_hypothesis(x, g);
    const auto y = normal_vector(rng, n);
    const SumOfSquaresReport r = sum_of_squares(x, h, y);
    CHECK(r.agrees());
    CHECK(r.rmfm == doctest::Approx(oracle_rmfm(x, g, y)).epsilon(1e-8));
  }
}

TEST_CASE("balanced effects decompose the corrected total") {
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = rng.integer(1, 4);
    const Dataset d = random_dataset(rng, rng.integer(2, 4), rng.integer(2, 4), n, n);
    const auto y = responses(d);
    double mean = 0.0;
    for (double v : y) mean += v / static_cast<double>(y.size());
    double total = 0.0;
    for (double v : y) total += (v - mean) * (v - mean);
    const double sse = fit(cell_means_design(d), y).sse;
    const double parts = sum_of_squares(d, Effect::A, y).rmfm +
                         sum_of_squares(d, Effect::B, y).rmfm +
                         sum_of_squares(d, Effect::AB, y).rmfm + sse;
    CHECK(parts == doctest::Approx(total).epsilon(1e-10));
  }
}

TEST_CASE("sums of squares scale with the square of the response") {
  Rng rng(55);
  const Dataset d = random_dataset(rng, 3, 3, 1, 4);
  auto y = responses(d);
  const double s = -3.5;
  std::vector<double> ys(y);
  for (double& v : ys) v *= s;
  for (Effect e : {Effect::A, Effect::B, Effect::AB}) {
    const auto r1 = sum_of_squares(d, e, y);
    const auto r2 = sum_of_squares(d, e, ys);
    CHECK(r2.geometric == doctest::Approx(s * s * r1.geometric).epsilon(1e-10));
    CHECK(r2.rmfm == doctest::Approx(s * s * r1.rmfm).epsilon(1e-10));
    CHECK(r2.pearson == doctest::Approx(s * s * r1.pearson).epsilon(1e-10));
    CHECK(r2.yates_general == doctest::Approx(s * s * r1.yates_general).epsilon(1e-10));
    if (r1.mwsm) CHECK(*r2.mwsm == doctest::Approx(s * s * *r1.mwsm).epsilon(1e-10));
  }
}

TEST_CASE("proportional subclass numbers: weighted means versus the proportional-numbers SS") {
  // Illustration only. With n_ij proportional to row x column totals, the classical
  // SS_A = sum_i n_i. (ybar_i.. - ybar...)^2 generally differs from the weighted
  // squares of means.
  std::vector<Observation> obs;
  const std::size_t counts[2][2] = {{1, 2}, {2, 4}};
  Rng rng(12);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      for (std::size_t r = 0; r < counts[i][j]; ++r) {
        obs.push_back({"a" + std::to_string(i), "b" + std::to_string(j), rng.normal()});
      }
    }
  }
  const Dataset d(obs);
  const auto y = d.responses();
  std::vector<double> row_sum(2, 0.0);
  std::vector<double> row_n(2, 0.0);
  double grand = 0.0;
  for (std::size_t s = 0; s < y.size(); ++s) {
    row_sum[d.cell_of(s) / 2] += y[s];
    row_n[d.cell_of(s) / 2] += 1.0;
    grand += y[s] / static_cast<double>(y.size());
  }
  double proportional = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    const double dev = row_sum[i] / row_n[i] - grand;
    proportional += row_n[i] * dev * dev;
  }
  MESSAGE("weighted squares of means: " << ss_mwsm(d, Effect::A, y)
                                        << ", proportional-numbers SS_A: " << proportional);
  CHECK(std::isfinite(proportional));
}
