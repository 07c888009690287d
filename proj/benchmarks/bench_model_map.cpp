#include <benchmark/benchmark.h>

#include "qcs/dilatation.hpp"
#include "qcs/halton.hpp"
#include "qcs/model_map.hpp"

using namespace qcs;

static void BM_eval_F(benchmark::State& state) {
  Tiling t = Tiling::build(DiameterSequence::checked({2, 4, 2, 8}));
  Rect w{-16.0, 4.0, -6.0, 6.0};
  std::size_t k = 0;
  for (auto _ : state) {
    Complex z = halton_point(k++ % 65536, w);
    try {
      benchmark::DoNotOptimize(eval_F(t, z));
    } catch (const OutsideModelError&) {
    }
  }
}
BENCHMARK(BM_eval_F);

static void BM_mu_analytic(benchmark::State& state) {
  Tiling t = Tiling::build(DiameterSequence::checked({2, 4, 2, 8}));
  Rect w{-16.0, 4.0, -6.0, 6.0};
  std::size_t k = 0;
  for (auto _ : state) {
    Complex z = halton_point(k++ % 65536, w);
    benchmark::DoNotOptimize(mu_analytic(t, z));
  }
}
BENCHMARK(BM_mu_analytic);

static void BM_locate(benchmark::State& state) {
  Tiling t = Tiling::build(DiameterSequence::checked({2, 4, 2, 8}));
  Rect w{-16.0, 4.0, -6.0, 6.0};
  std::size_t k = 0;
  for (auto _ : state) {
    Complex z = halton_point(k++ % 65536, w);
    benchmark::DoNotOptimize(t.locate(z));
  }
}
BENCHMARK(BM_locate);
