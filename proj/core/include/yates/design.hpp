#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "yates/linalg.hpp"
#include "yates/matrix.hpp"

namespace yates {

struct Observation {
  std::string a_label;
  std::string b_label;
  double response = 0.0;
};

/** Two-factor dataset with every cell occupied.
 *
 * Levels of each factor are indexed in lexicographic order of their labels. Cells are
 * numbered i * b + j (B index fastest). Observations keep their input order, so the
 * response vector lines up with the rows of the cell-means design matrix.
 */
class Dataset {
 public:
  /// Throws EmptyCellError for an unoccupied cell, NonFiniteValue for a non-finite
  /// response, and Error when `observations` is empty.
  explicit Dataset(std::vector<Observation> observations);

  std::size_t a() const noexcept { return levels_a_.size(); }
  std::size_t b() const noexcept { return levels_b_.size(); }
  std::size_t n_total() const noexcept { return observations_.size(); }
  std::size_t n_cells() const noexcept { return a() * b(); }

  const std::vector<std::string>& levels_a() const noexcept { return levels_a_; }
  const std::vector<std::string>& levels_b() const noexcept { return levels_b_; }
  const std::vector<Observation>& observations() const noexcept { return observations_; }

  std::size_t cell_index(std::size_t i, std::size_t j) const noexcept { return i * b() + j; }
  /// Cell of observation s.
  std::size_t cell_of(std::size_t s) const { return cell_of_.at(s); }
  /// n_ij.
  std::size_t count(std::size_t i, std::size_t j) const { return counts_.at(cell_index(i, j)); }
  const std::vector<std::size_t>& counts() const noexcept { return counts_; }

  std::span<const double> responses() const noexcept { return responses_; }

 private:
  std::vector<Observation> observations_;
  std::vector<std::string> levels_a_;
  std::vector<std::string> levels_b_;
  std::vector<std::size_t> cell_of_;
  std::vector<std::size_t> counts_;
  std::vector<double> responses_;
};

/// Least-squares fit of y on sp(X).
struct ModelFit {
  Matrix design;
  OrthonormalBasis basis;
  /// P_X y.
  std::vector<double> fitted;
  double sse = 0.0;
  std::size_t df_error = 0;
  /// sse / df_error; absent when the model is saturated.
  std::optional<double> mse;
};

/// K: one indicator column per cell, row s marks the cell of observation s.
Matrix cell_means_design(const Dataset& d);

/// D_ab = Diag(1/n_ij) = (K'K)^{-1}.
Matrix inverse_cell_counts(const Dataset& d);

/// Throws DimensionMismatch when rows(x) != y.size(). `scale` is passed to gram_schmidt.
ModelFit fit(const Matrix& x, std::span<const double> y, double tol = kDefaultTolerance,
             double scale = 0.0);

/// Sample cell means in cell order.
std::vector<double> cell_means_estimates(const Dataset& d);
/// Cell means of an alternative response vector aligned with the dataset's observations.
std::vector<double> cell_means_estimates(const Dataset& d, std::span<const double> y);

}  // namespace yates
