// Microbenchmarks for the hot paths: the RK4 step builder, trajectory
// simulation, both non-symmetric cross gramian paths (the averaged fast path
// should win by roughly the input-output channel count), the Jacobi SVD, and
// a balanced-truncation factorization.
#include <benchmark/benchmark.h>

#include "gramor/gramians.hpp"
#include "gramor/linalg.hpp"
#include "gramor/lti.hpp"
#include "gramor/reduce.hpp"
#include "gramor/rng.hpp"
#include "gramor/sim.hpp"

namespace {

using namespace gramor;

void bm_rk4_transition(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const LtiSystem sys = lehmer_system(n, 2, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rk4_transition(sys.a, 0.01));
  }
}
BENCHMARK(bm_rk4_transition)->Arg(16)->Arg(64);

void bm_impulse_response(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const LtiSystem sys = lehmer_system(n, 8, 1);
  const SimGrid grid = make_grid(0.01, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(impulse_response(sys, grid));
  }
}
BENCHMARK(bm_impulse_response)->Arg(16)->Arg(64);

void bm_wz_subsystem_sum(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const LtiSystem sys = lehmer_system(n, 4, 1);
  const SimGrid grid = make_grid(0.01, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(wz_nonsymmetric(sys, grid, WzPath::subsystem_sum));
  }
}
BENCHMARK(bm_wz_subsystem_sum)->Arg(16)->Arg(32);

void bm_wz_averaged_fast_path(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const LtiSystem sys = lehmer_system(n, 4, 1);
  const SimGrid grid = make_grid(0.01, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(wz_nonsymmetric(sys, grid, WzPath::averaged_fast_path));
  }
}
BENCHMARK(bm_wz_averaged_fast_path)->Arg(16)->Arg(32);

void bm_svd(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const Matrix m = random_matrix(n, n, 7, 0, -1.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(svd(m));
  }
}
BENCHMARK(bm_svd)->Arg(16)->Arg(64);

void bm_balanced_truncation(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const LtiSystem sys = lehmer_system(n, 4, 1);
  const SimGrid grid = make_grid(0.01, 5.0);
  const Matrix wc = wc_empirical(sys, grid);
  const Matrix wo = wo_empirical(sys, grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(balanced_truncation(wc, wo, n / 4));
  }
}
BENCHMARK(bm_balanced_truncation)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
