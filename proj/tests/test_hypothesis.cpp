#include <doctest.h>

#include <cmath>

#include "support/test_support.hpp"
#include "yates/errors.hpp"
#include "yates/hypothesis.hpp"
#include "yates/inference.hpp"
#include "yates/linalg.hpp"

using namespace yates;
using yates::testing::max_abs_diff;
using yates::testing::normal_vector;
using yates::testing::random_dataset;
using yates::testing::worked_dataset;

namespace {

std::size_t expected_df(const Dataset& d, Effect e) {
  switch (e) {
    case Effect::A:
      return d.a() - 1;
    case Effect::B:
      return d.b() - 1;
    case Effect::AB:
      return (d.a() - 1) * (d.b() - 1);
  }
  return 0;
}

void check_decomposition(const Matrix& x, const Hypothesis& h, const YatesDecomposition& yd) {
  const Matrix px = projector(x);
  CHECK(max_abs_diff(px * yd.a, yd.a) < 1e-10);
  CHECK(max_abs_diff(x.transpose() * yd.a * yd.c, h.g) < 1e-10);
  CHECK(max_abs(yd.m.transpose() * yd.c) < 1e-10);
  CHECK(gram_schmidt(yd.a).rank == yd.a.cols());
  CHECK(spd_inverse(yd.d).has_value());
  CHECK(gram_schmidt(hcat(yd.c, yd.m)).rank == yd.c.rows());
}

}  // namespace

TEST_CASE("simple contrast under X = I_3") {
  const Hypothesis h = make_hypothesis(Matrix::identity(3), Matrix{{1}, {-1}, {0}});
  CHECK(h.df == 1);
  REQUIRE(h.n.cols() == 2);
  const Matrix expected_span{{1, 0}, {1, 0}, {0, 1}};
  CHECK(max_abs_diff(projector(h.n), projector(expected_span)) < 1e-14);
  CHECK(max_abs(h.n.transpose() * h.g) < 1e-14);
  CHECK(max_abs_diff(h.h, h.g) < 1e-14);
}

TEST_CASE("one-way layout with G = S_3 has two degrees of freedom") {
  const Matrix x{{1, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 1}, {0, 0, 1}};
  const Hypothesis h = make_hypothesis(x, centering(3));
  // Oracle: rank of S_3 = trace of the idempotent S_3.
  CHECK(static_cast<double>(h.df) == doctest::Approx(trace(centering(3))));
  CHECK(h.df == 2);
  CHECK(trace(hypothesis_projector(x, h)) == doctest::Approx(2.0));
}

TEST_CASE("hypothesis error paths") {
  const Matrix x{{1, 0}, {1, 0}, {2, 0}};
  CHECK_THROWS_AS(make_hypothesis(x, Matrix{{0}, {1}}), NotEstimable);
  CHECK_THROWS_AS(make_hypothesis(x, Matrix{{0}, {0}}), ZeroHypothesis);
  CHECK_THROWS_AS(make_hypothesis(x, Matrix{{1}, {0}, {0}}), DimensionMismatch);
  // Estimable: the first coordinate.
  CHECK(make_hypothesis(x, Matrix{{1}, {0}}).df == 1);
}

TEST_CASE("hypothesis invariants on rank-deficient designs") {
  Rng rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = rng.integer(6, 12);
    const std::size_t k = rng.integer(3, 5);
    const std::size_t rank = rng.integer(2, k - 1);
    const Matrix x = testing::random_matrix(rng, n, rank) * testing::random_matrix(rng, rank, k);
    // Estimable G: columns in the row space of X.
    const Matrix g = x.transpose() * testing::random_matrix(rng, n, rng.integer(1, 3));
    const Hypothesis h = make_hypothesis(x, g);
    CHECK(max_abs(h.n.transpose() * h.g) < 1e-9);
    CHECK(max_abs_diff(x.transpose() * h.h, g) < 1e-8 * (1.0 + max_abs(g)));
    CHECK(max_abs_diff(projector(x) * h.h, h.h) < 1e-9);
    CHECK(trace(hypothesis_projector(x, h)) == doctest::Approx(static_cast<double>(h.df)));
    check_decomposition(x, h, orthonormal_decomposition(x, h));
  }
}

TEST_CASE("A-effect hypothesis for a 2x2 layout") {
  const Dataset d = worked_dataset();
  const TwoFactorHypothesis tf = two_factor_hypothesis(d, Effect::A);
  // Oracle: (1/2)(S_2 (x) 1_2) written out.
  const Matrix expected{{0.25, -0.25}, {0.25, -0.25}, {-0.25, 0.25}, {-0.25, 0.25}};
  CHECK(max_abs_diff(tf.hypothesis.g, expected) < 1e-15);
  CHECK(tf.hypothesis.df == 1);
  // D_a = (1/4) Diag(1/2 + 1, 1 + 1/2) = Diag(3/8, 3/8).
  CHECK(max_abs_diff(tf.yates.d, Matrix{{0.375, 0}, {0, 0.375}}) < 1e-15);
  CHECK(tf.yates.m == ones(2));
  CHECK(max_abs_diff(tf.yates.c, centering(2)) == 0.0);
}

TEST_CASE("balanced layouts have equal weights") {
  Rng rng(5);
  for (std::size_t n : {1u, 2u, 4u}) {
    const Dataset d = random_dataset(rng, 3, 4, n, n);
    const auto tf = two_factor_hypothesis(d, Effect::A);
    const double expected = 1.0 / static_cast<double>(n * 4);
    CHECK(max_abs_diff(tf.yates.d, expected * Matrix::identity(3)) < 1e-15);
  }
}

TEST_CASE("marginal mean estimates") {
  const Dataset d = worked_dataset();
  const auto y = d.responses();
  const auto u_a = marginal_mean_estimates(two_factor_hypothesis(d, Effect::A).yates, y);
  // Oracle: ((2 + 4)/2, (6 + 8)/2).
  CHECK(u_a[0] == doctest::Approx(3.0));
  CHECK(u_a[1] == doctest::Approx(7.0));
  const auto u_b = marginal_mean_estimates(two_factor_hypothesis(d, Effect::B).yates, y);
  CHECK(u_b[0] == doctest::Approx(4.0));
  CHECK(u_b[1] == doctest::Approx(6.0));

  const Dataset constant({{"p", "x", 2.5}, {"p", "y", 2.5}, {"q", "x", 2.5}, {"q", "x", 2.5},
                          {"q", "y", 2.5}});
  for (double u : marginal_mean_estimates(two_factor_hypothesis(constant, Effect::A).yates,
                                          constant.responses())) {
    CHECK(u == doctest::Approx(2.5));
  }

  // Single replicate 2x3 table [[1, 2, 6], [4, 4, 7]]: row means (3, 5).
  const Dataset table({{"r1", "c1", 1}, {"r1", "c2", 2}, {"r1", "c3", 6}, {"r2", "c1", 4},
                       {"r2", "c2", 4}, {"r2", "c3", 7}});
  const auto rows = marginal_mean_estimates(two_factor_hypothesis(table, Effect::A).yates,
                                            table.responses());
  CHECK(rows[0] == doctest::Approx(3.0));
  CHECK(rows[1] == doctest::Approx(5.0));
}

TEST_CASE("single-level factor has no main-effect hypothesis") {
  const Dataset d({{"only", "x", 1.0}, {"only", "y", 2.0}, {"only", "y", 4.0}});
  CHECK_THROWS_AS(two_factor_hypothesis(d, Effect::A), ZeroHypothesis);
  CHECK(two_factor_hypothesis(d, Effect::B).hypothesis.df == 1);
}

TEST_CASE("two-factor hypotheses satisfy AC = H, df rules and decomposition invariants") {
  Rng rng(202);
  for (int trial = 0; trial < 60; ++trial) {
    const Dataset d = random_dataset(rng, rng.integer(2, 4), rng.integer(2, 4), 1, 5);
    const Matrix k = cell_means_design(d);
    for (Effect e : {Effect::A, Effect::B, Effect::AB}) {
      CAPTURE(trial);
      CAPTURE(to_string(e));
      const TwoFactorHypothesis tf = two_factor_hypothesis(d, e);
      CHECK(tf.hypothesis.df == expected_df(d, e));
      CHECK(max_abs_diff(tf.yates.a * tf.yates.c, tf.hypothesis.h) <= 1e-8);
      check_decomposition(k, tf.hypothesis, tf.yates);
      const Matrix p = hypothesis_projector(k, tf.hypothesis);
      CHECK(trace(p) == doctest::Approx(static_cast<double>(expected_df(d, e))));
    }
  }
}

TEST_CASE("P_X - P_XN is the admissible numerator projector") {
  Rng rng(303);
  for (int trial = 0; trial < 40; ++trial) {
    const Dataset d = random_dataset(rng, rng.integer(2, 4), rng.integer(2, 4), 1, 5);
    const Matrix k = cell_means_design(d);
    for (Effect e : {Effect::A, Effect::B, Effect::AB}) {
      const Hypothesis h = two_factor_hypothesis(d, e).hypothesis;
      const Matrix p = hypothesis_projector(k, h);
      CHECK(max_abs(p * k * h.n) <= 1e-8);
      // sp(X'P) = sp(G): same rank, and G lies in sp(X'P).
      const Matrix xtp = k.transpose() * p;
      CHECK(gram_schmidt(xtp).rank == h.df);
      CHECK(max_abs_diff(projector(xtp) * h.g, h.g) <= 1e-8);
      // P_X is symmetric idempotent with range in sp(X) but is rejected.
      CHECK(gram_schmidt(k.transpose() * projector(k)).rank != h.df);
    }
  }
}

TEST_CASE("noncentrality vanishes exactly on the null") {
  Rng rng(404);
  for (int trial = 0; trial < 50; ++trial) {
    const Dataset d = random_dataset(rng, rng.integer(2, 4), rng.integer(2, 4), 1, 5);
    const Matrix k = cell_means_design(d);
    for (Effect e : {Effect::A, Effect::B, Effect::AB}) {
      const Hypothesis h = two_factor_hypothesis(d, e).hypothesis;
      const Matrix p = hypothesis_projector(k, h);
      const auto gamma = normal_vector(rng, h.n.cols());
      const auto beta0 = h.n * std::span<const double>(gamma);
      const auto mu0 = k * std::span<const double>(beta0);
      CHECK(std::sqrt(squared_norm(p * std::span<const double>(mu0))) <= 1e-8);
      CHECK(noncentrality(k, p, beta0, 1.0) <= 1e-8);

      const auto beta1 = normal_vector(rng, k.cols());
      const auto gb = transpose_times(h.g, beta1);
      if (std::sqrt(squared_norm(gb)) > 1e-6) CHECK(noncentrality(k, p, beta1, 1.0) > 0.0);
    }
  }
}
