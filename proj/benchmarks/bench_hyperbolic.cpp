#include <benchmark/benchmark.h>

#include "qcs/hyperbolic.hpp"

using namespace qcs;

static void BM_density_X(benchmark::State& state) {
  int k = 0;
  for (auto _ : state) {
    double x = -1.0 - 0.03 * (k++ % 100);
    benchmark::DoNotOptimize(density_X({x, 0.2}));
  }
}
BENCHMARK(BM_density_X);

static void BM_hyp_length(benchmark::State& state) {
  Complex seg[2] = {{-2, 0}, {-1.0001, 0}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(hyp_length(std::span<const Complex>(seg, 2)));
  }
}
BENCHMARK(BM_hyp_length);
