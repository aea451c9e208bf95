#include <benchmark/benchmark.h>

#include "yates/app/generators.hpp"
#include "yates/distributions.hpp"
#include "yates/linalg.hpp"
#include "yates/sumsquares.hpp"

namespace {

void BM_GramSchmidt(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  yates::Rng rng(1);
  yates::Matrix m(n, n / 2);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rng.normal();
  }
  for (auto _ : state) benchmark::DoNotOptimize(yates::gram_schmidt(m));
}
BENCHMARK(BM_GramSchmidt)->Arg(16)->Arg(64)->Arg(128);

void BM_AllFormulations(benchmark::State& state) {
  const auto levels = static_cast<std::size_t>(state.range(0));
  yates::Rng rng(2);
  const yates::Dataset d = yates::app::random_two_factor_dataset(rng, levels, levels, 1, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(yates::sum_of_squares(d, yates::Effect::A, d.responses()));
  }
}
BENCHMARK(BM_AllFormulations)->Arg(2)->Arg(4);

void BM_IncompleteBeta(benchmark::State& state) {
  double x = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(yates::regularized_incomplete_beta(x, 3.5, 40.0));
    x = x > 0.98 ? 0.01 : x + 0.013;
  }
}
BENCHMARK(BM_IncompleteBeta);

}  // namespace

BENCHMARK_MAIN();
