// Serial reference kernels vs their OpenMP versions, and serial vs parallel sweeps.

#include <benchmark/benchmark.h>

#include <vector>

#include "tightcert/ensembles.hpp"
#include "tightcert/experiments.hpp"
#include "tightcert/kernels.hpp"

using namespace tightcert;

namespace {

SymmetricMatrix random_matrix(std::size_t n) {
  RngStream rng(1, n);
  SymmetricMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m.set(i, j, rng.uniform());
  return m;
}

template <bool Parallel>
void BM_symv(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SymmetricMatrix m = random_matrix(n);
  std::vector<double> v(n, 1.0), out(n);
  for (auto _ : state) {
    if constexpr (Parallel) kernels::symv(m, v, out);
    else kernels::symv_serial(m, v, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n * n));
}

template <bool Parallel>
void BM_sym_times_dense(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::size_t k = 32;
  const SymmetricMatrix m = random_matrix(n);
  std::vector<double> r(n * k, 0.5), out(n * k);
  for (auto _ : state) {
    if constexpr (Parallel) kernels::sym_times_dense(m, r, k, out);
    else kernels::sym_times_dense_serial(m, r, k, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n * n * k));
}

template <bool Parallel>
void BM_offdiag_row_sums(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SymmetricMatrix m = random_matrix(n);
  std::vector<double> out(n);
  for (auto _ : state) {
    if constexpr (Parallel) kernels::offdiag_row_sums(m, out);
    else kernels::offdiag_row_sums_serial(m, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <Execution Mode>
void BM_sbm_sweep(benchmark::State& state) {
  SweepConfig cfg;
  cfg.experiment = Experiment::kSbm;
  cfg.grids["n"] = {static_cast<double>(state.range(0))};
  cfg.grids["alpha"] = {4, 10};
  cfg.grids["beta"] = {1};
  cfg.trials = 8;
  cfg.master_seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(cfg, Mode).cells.size());
}

}  // namespace

BENCHMARK(BM_symv<false>)->Arg(500)->Arg(2000);
BENCHMARK(BM_symv<true>)->Arg(500)->Arg(2000);
BENCHMARK(BM_sym_times_dense<false>)->Arg(500)->Arg(2000);
BENCHMARK(BM_sym_times_dense<true>)->Arg(500)->Arg(2000);
BENCHMARK(BM_offdiag_row_sums<false>)->Arg(2000);
BENCHMARK(BM_offdiag_row_sums<true>)->Arg(2000);
BENCHMARK(BM_sbm_sweep<Execution::kSerial>)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sbm_sweep<Execution::kParallel>)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
