#pragma once

#include <cstddef>
#include <vector>

#include "yates/design.hpp"
#include "yates/random.hpp"

namespace yates::app {

/// a x b layout with n_ij drawn uniformly from [min_per_cell, max_per_cell] and
/// standard normal responses. Labels are "a0", "a1", ... and "b0", "b1", ...
Dataset random_two_factor_dataset(Rng& rng, std::size_t a, std::size_t b,
                                  std::size_t min_per_cell, std::size_t max_per_cell);

/// Balanced layout with `per_cell` observations per cell and standard normal responses.
Dataset balanced_dataset(Rng& rng, std::size_t a, std::size_t b, std::size_t per_cell);

/// Replaces the responses of `d` (same cells, same order).
Dataset with_responses(const Dataset& d, const std::vector<double>& y);

}  // namespace yates::app
