// Serial reference kernels against their OpenMP counterparts.
//
//   ./build/bench/qubogs_bench --benchmark_filter=Exhaustive
//   OMP_NUM_THREADS=8 ./build/bench/qubogs_bench

#include <benchmark/benchmark.h>

#include <random>

#include "qubogs/block_gauss_seidel.hpp"
#include "qubogs/grid.hpp"
#include "qubogs/qubo.hpp"
#include "qubogs/samplers.hpp"

namespace {

// Diagonal block of the heat plate encoded the way the solver does it.
qubogs::QuboProblem heat_block_qubo(std::size_t block_size, std::size_t bits) {
  const auto sys = qubogs::assemble_system(qubogs::HeatProblem{});
  const auto a = qubogs::DenseMatrix::from_sparse(sys.a).slice(0, block_size, 0, block_size);
  const std::vector<double> rhs(sys.b.begin(), sys.b.begin() + static_cast<std::ptrdiff_t>(block_size));
  return qubogs::encode(a, rhs, qubogs::BinaryEncoding::uniform(block_size, bits, 50.0, 0.0));
}

void BM_ExhaustiveSerial(benchmark::State& state) {
  const auto q = heat_block_qubo(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(qubogs::reference::solve_exhaustive(q));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << q.size()));
}

void BM_ExhaustiveParallel(benchmark::State& state) {
  const auto q = heat_block_qubo(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(qubogs::solve_exhaustive(q));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << q.size()));
}

qubogs::SamplerParams sa_params() {
  qubogs::SamplerParams p;
  p.num_reads = 64;
  p.sweeps = 500;
  p.seed = 1;
  return p;
}

void BM_AnnealSerial(benchmark::State& state) {
  const auto q = heat_block_qubo(static_cast<std::size_t>(state.range(0)), 3);
  const auto p = sa_params();
  for (auto _ : state) benchmark::DoNotOptimize(qubogs::reference::solve_sa(q, p));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p.num_reads * p.sweeps * q.size()));
}

void BM_AnnealParallel(benchmark::State& state) {
  const auto q = heat_block_qubo(static_cast<std::size_t>(state.range(0)), 3);
  const auto p = sa_params();
  for (auto _ : state) benchmark::DoNotOptimize(qubogs::solve_sa(q, p));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p.num_reads * p.sweeps * q.size()));
}

void BM_BlockSweepExact(benchmark::State& state) {
  const auto sys = qubogs::assemble_system(qubogs::HeatProblem{});
  const auto part = qubogs::partition(sys.size(), static_cast<std::size_t>(state.range(0)));
  const qubogs::BlockSolveFn exact = [](std::size_t, const qubogs::DenseMatrix& a, std::span<const double> rhs) {
    return qubogs::solve_block_exact(a, rhs);
  };
  std::vector<double> x(sys.size(), 0.0);
  for (auto _ : state) {
    x = qubogs::gs_sweep(sys, part, x, exact).x;
    benchmark::DoNotOptimize(x.data());
  }
}

}  // namespace

BENCHMARK(BM_ExhaustiveSerial)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExhaustiveParallel)->Arg(4)->Arg(5)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AnnealSerial)->Arg(3)->Arg(9)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AnnealParallel)->Arg(3)->Arg(9)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BlockSweepExact)->Arg(1)->Arg(9)->Arg(27)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
