#include "yates/design.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "yates/errors.hpp"

namespace yates {
namespace {

std::vector<std::string> sorted_levels(const std::vector<Observation>& obs,
                                       std::string Observation::*label) {
  std::vector<std::string> levels;
  levels.reserve(obs.size());
  for (const auto& o : obs) levels.push_back(o.*label);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  return levels;
}

std::size_t level_index(const std::vector<std::string>& levels, const std::string& label) {
  const auto it = std::lower_bound(levels.begin(), levels.end(), label);
  return static_cast<std::size_t>(std::distance(levels.begin(), it));
}

}  // namespace

Dataset::Dataset(std::vector<Observation> observations)
    : observations_(std::move(observations)) {
  if (observations_.empty()) {
    throw Error("dataset has no observations");
  }
  levels_a_ = sorted_levels(observations_, &Observation::a_label);
  levels_b_ = sorted_levels(observations_, &Observation::b_label);

  counts_.assign(a() * b(), 0);
  cell_of_.reserve(observations_.size());
  responses_.reserve(observations_.size());
  for (const auto& o : observations_) {
    if (!std::isfinite(o.response)) {
      throw NonFiniteValue("non-finite response in cell (" + o.a_label + ", " + o.b_label + ")");
    }
    const std::size_t cell =
        cell_index(level_index(levels_a_, o.a_label), level_index(levels_b_, o.b_label));
    cell_of_.push_back(cell);
    ++counts_[cell];
    responses_.push_back(o.response);
  }
  for (std::size_t i = 0; i < a(); ++i) {
    for (std::size_t j = 0; j < b(); ++j) {
      if (counts_[cell_index(i, j)] == 0) {
        throw EmptyCellError(i, j, levels_a_[i], levels_b_[j]);
      }
    }
  }
}

Matrix cell_means_design(const Dataset& d) {
  Matrix k(d.n_total(), d.n_cells());
  for (std::size_t s = 0; s < d.n_total(); ++s) k(s, d.cell_of(s)) = 1.0;
  return k;
}

Matrix inverse_cell_counts(const Dataset& d) {
  std::vector<double> inv;
  inv.reserve(d.n_cells());
  for (std::size_t n : d.counts()) inv.push_back(1.0 / static_cast<double>(n));
  return Matrix::diagonal(inv);
}

ModelFit fit(const Matrix& x, std::span<const double> y, double tol, double scale) {
  if (x.rows() != y.size()) {
    throw DimensionMismatch("fit: design has " + std::to_string(x.rows()) +
                            " rows but response has length " + std::to_string(y.size()));
  }
  ModelFit f;
  f.design = x;
  f.basis = gram_schmidt(x, tol, scale);
  const auto coords = transpose_times(f.basis.basis, y);
  f.fitted = f.basis.basis * std::span<const double>(coords);
  double sse = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double r = y[i] - f.fitted[i];
    sse += r * r;
  }
  f.sse = sse;
  f.df_error = y.size() - f.basis.rank;
  if (f.df_error > 0) f.mse = sse / static_cast<double>(f.df_error);
  return f;
}

std::vector<double> cell_means_estimates(const Dataset& d) {
  return cell_means_estimates(d, d.responses());
}

std::vector<double> cell_means_estimates(const Dataset& d, std::span<const double> y) {
  if (y.size() != d.n_total()) {
    throw DimensionMismatch("response length does not match the dataset");
  }
  std::vector<double> sums(d.n_cells(), 0.0);
  for (std::size_t s = 0; s < y.size(); ++s) sums[d.cell_of(s)] += y[s];
  for (std::size_t c = 0; c < sums.size(); ++c) {
    sums[c] /= static_cast<double>(d.counts()[c]);
  }
  return sums;
}

}  // namespace yates
