#include <benchmark/benchmark.h>

#include "shiftdet/config.h"
#include "shiftdet/determinants.h"
#include "shiftdet/kernels.h"

using namespace shiftdet;

namespace {

struct Setup {
  ProblemConfig cfg;
  QuadratureRule rule;
  NodeKernel kernel;

  explicit Setup(int n) : cfg(standard_config()), rule(gauss_legendre_rule(n, -1.0, 1.0)) {
    const VectorPair pair = gsk_vector_pair(cfg);
    kernel = general_kernel_on_nodes(pair, cfg.shift, cfg.near_diagonal_threshold())(rule);
  }
};

void BM_AssembleSerial(benchmark::State& state) {
  const Setup s(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_nystrom_serial(s.kernel, s.rule));
}

void BM_AssembleOmp(benchmark::State& state) {
  const Setup s(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_nystrom_omp(s.kernel, s.rule));
}

void BM_DetSerial(benchmark::State& state) {
  const Setup s(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lu_determinant(assemble_nystrom_serial(s.kernel, s.rule)));
}

void BM_DetOmp(benchmark::State& state) {
  const Setup s(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lu_determinant(assemble_nystrom_omp(s.kernel, s.rule)));
}

}  // namespace

BENCHMARK(BM_AssembleSerial)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleOmp)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DetSerial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DetOmp)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
