#include "yates/hypothesis.hpp"

#include <cmath>
#include <string>

#include "yates/errors.hpp"

namespace yates {
namespace {

// X'H = G is checked to this accuracy relative to the scale of G.
constexpr double kConstructionTolerance = 1e-8;

}  // namespace

Hypothesis make_hypothesis(const Matrix& x, const Matrix& g, double tol) {
  if (g.rows() != x.cols()) {
    throw DimensionMismatch("hypothesis matrix has " + std::to_string(g.rows()) +
                            " rows but the design has " + std::to_string(x.cols()) + " columns");
  }
  if (g.cols() == 0 || max_abs(g) == 0.0) {
    throw ZeroHypothesis("G is the zero matrix; there is nothing to test");
  }

  const Matrix residual = g - projector(x.transpose(), tol) * g;
  for (std::size_t j = 0; j < g.cols(); ++j) {
    const double norm = std::sqrt(squared_norm(g.column(j)));
    const double off = std::sqrt(squared_norm(residual.column(j)));
    if (off > tol * (norm > 0.0 ? norm : 1.0)) {
      throw NotEstimable("column " + std::to_string(j) +
                         " of G is not in the row space of X (residual " + std::to_string(off) +
                         ")");
    }
  }

  Hypothesis h;
  h.g = g;
  h.n = complement_basis(g, g.rows(), tol);
  h.h = x * g_inverse(x.transpose() * x, tol) * g;

  const double err = max_abs(x.transpose() * h.h - g);
  if (err > kConstructionTolerance * (1.0 + max_abs(g))) {
    throw Error("failed to solve X'H = G (max error " + std::to_string(err) + ")");
  }
  h.df = gram_schmidt(h.h, tol).rank;
  return h;
}

Matrix hypothesis_projector(const Matrix& x, const Hypothesis& h, double tol) {
  return projector(x, tol) - projector(x * h.n, tol, max_column_norm(x));
}

YatesDecomposition orthonormal_decomposition(const Matrix& x, const Hypothesis& h, double tol) {
  const OrthonormalBasis v = gram_schmidt(x, tol);
  YatesDecomposition yd;
  yd.a = v.basis;
  yd.c = v.basis.transpose() * h.h;
  yd.m = complement_basis(yd.c, v.rank, tol);
  yd.d = yd.a.transpose() * yd.a;
  return yd;
}

std::string_view to_string(Effect e) {
  switch (e) {
    case Effect::A:
      return "A";
    case Effect::B:
      return "B";
    case Effect::AB:
      return "AB";
  }
  return "?";
}

std::optional<Effect> parse_effect(std::string_view text) {
  if (text == "A") return Effect::A;
  if (text == "B") return Effect::B;
  if (text == "AB") return Effect::AB;
  return std::nullopt;
}

TwoFactorHypothesis two_factor_hypothesis(const Dataset& d, Effect effect, double tol) {
  const std::size_t a = d.a();
  const std::size_t b = d.b();
  const Matrix k = cell_means_design(d);
  const Matrix k_dab = k * inverse_cell_counts(d);

  Matrix g;
  YatesDecomposition yd;
  switch (effect) {
    case Effect::A: {
      const double s = 1.0 / static_cast<double>(b);
      g = s * kronecker(centering(a), ones(b));
      yd.a = s * (k_dab * kronecker(Matrix::identity(a), ones(b)));
      yd.c = centering(a);
      yd.m = ones(a);
      break;
    }
    case Effect::B: {
      const double s = 1.0 / static_cast<double>(a);
      g = s * kronecker(ones(a), centering(b));
      yd.a = s * (k_dab * kronecker(ones(a), Matrix::identity(b)));
      yd.c = centering(b);
      yd.m = ones(b);
      break;
    }
    case Effect::AB: {
      g = kronecker(centering(a), centering(b));
      yd.a = k_dab;
      yd.c = g;
      yd.m = complement_basis(g, a * b, tol);
      break;
    }
  }
  yd.d = yd.a.transpose() * yd.a;
  return TwoFactorHypothesis{make_hypothesis(k, g, tol), std::move(yd)};
}

std::vector<double> marginal_mean_estimates(const YatesDecomposition& yd,
                                            std::span<const double> y) {
  return transpose_times(yd.a, y);
}

}  // namespace yates
