#include <benchmark/benchmark.h>

#include "qcs/beltrami.hpp"

using namespace qcs;

static void BM_beurling_transform(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ComplexGrid g = ComplexGrid::make(Rect{-4, 4, -4, 4}, n, n);
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix)
      g.at(ix, iy) = std::exp(-std::norm(g.node(ix, iy)));
  for (auto _ : state) {
    singular_transform(g);
    benchmark::DoNotOptimize(g.v.data());
  }
}
BENCHMARK(BM_beurling_transform)->Arg(256)->Arg(512);

static void BM_solve_constant_mu(benchmark::State& state) {
  SolverConfig cfg;
  cfg.nx = cfg.ny = static_cast<int>(state.range(0));
  ComplexGrid mu = ComplexGrid::make(cfg.window, cfg.nx, cfg.ny);
  for (auto& c : mu.v) c = {0.3, 0.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_mrmt(mu, cfg));
  }
}
BENCHMARK(BM_solve_constant_mu)->Arg(128)->Arg(256);
