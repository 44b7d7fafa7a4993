// Serial-vs-parallel timings for the data-parallel kernels: residual
// assembly, finite-difference Jacobian, and the equilibrium probe sweep.
// Both policies compute bit-identical results; this target measures what the
// parallelism buys at representative sizes (VPAIR_THREADS caps workers).
#include <benchmark/benchmark.h>

#include "vpair/expansion.hpp"
#include "vpair/geometry.hpp"
#include "vpair/newton.hpp"
#include "vpair/residual.hpp"

namespace {

using namespace vpair;

PairConfig bench_config(int N) {
  PairConfig cfg;
  cfg.mode = PairMode::co_rotating;
  cfg.gamma1 = 1.0;
  cfg.gamma2 = 2.0;
  cfg.b1 = 1.0;
  cfg.b2 = 1.0;
  cfg.d = 5.0;
  cfg.N = N;
  cfg.M = 8 * N;
  return cfg;
}

void bm_residual_series(benchmark::State& state, Exec exec) {
  const PairConfig cfg = bench_config(static_cast<int>(state.range(0)));
  const StateVector g = expansion_state(cfg, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(residual_series(cfg, 0.2, g, exec));
}

void bm_jacobian(benchmark::State& state, Exec exec) {
  const PairConfig cfg = bench_config(static_cast<int>(state.range(0)));
  const StateVector g = expansion_state(cfg, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(jacobian_fd(cfg, 0.2, g, exec));
}

void bm_equilibrium_probes(benchmark::State& state, Exec exec) {
  const PairConfig cfg = bench_config(16);
  VState v;
  v.eps = 0.2;
  v.state = expansion_state(cfg, 0.2);
  const int M_fine = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(equilibrium_residual(cfg, v, M_fine, 64, exec));
}

BENCHMARK_CAPTURE(bm_residual_series, serial, Exec::serial)->Arg(32)->Arg(64);
BENCHMARK_CAPTURE(bm_residual_series, parallel, Exec::parallel)->Arg(32)->Arg(64);
BENCHMARK_CAPTURE(bm_jacobian, serial, Exec::serial)->Arg(16)->Arg(32);
BENCHMARK_CAPTURE(bm_jacobian, parallel, Exec::parallel)->Arg(16)->Arg(32);
BENCHMARK_CAPTURE(bm_equilibrium_probes, serial, Exec::serial)->Arg(8192);
BENCHMARK_CAPTURE(bm_equilibrium_probes, parallel, Exec::parallel)->Arg(8192);

}  // namespace

BENCHMARK_MAIN();
