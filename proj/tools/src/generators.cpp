#include "yates/app/generators.hpp"

#include <string>

#include "yates/errors.hpp"

namespace yates::app {

Dataset random_two_factor_dataset(Rng& rng, std::size_t a, std::size_t b,
                                  std::size_t min_per_cell, std::size_t max_per_cell) {
  std::vector<Observation> obs;
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < b; ++j) {
      const std::size_t n = rng.integer(min_per_cell, max_per_cell);
      for (std::size_t r = 0; r < n; ++r) {
        obs.push_back({"a" + std::to_string(i), "b" + std::to_string(j), rng.normal()});
      }
    }
  }
  return Dataset(std::move(obs));
}

Dataset balanced_dataset(Rng& rng, std::size_t a, std::size_t b, std::size_t per_cell) {
  return random_two_factor_dataset(rng, a, b, per_cell, per_cell);
}

Dataset with_responses(const Dataset& d, const std::vector<double>& y) {
  if (y.size() != d.n_total()) throw DimensionMismatch("response length mismatch");
  std::vector<Observation> obs = d.observations();
  for (std::size_t s = 0; s < obs.size(); ++s) obs[s].response = y[s];
  return Dataset(std::move(obs));
}

}  // namespace yates::app
