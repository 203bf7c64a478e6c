#include <benchmark/benchmark.h>

#include "ier/stieltjes.hpp"

static void BM_ApplyF(benchmark::State& state) {
  ier::SolverConfig cfg;
  cfg.panels = static_cast<int>(state.range(0));
  const ier::FixedPointProblem problem(cfg, ier::Kernel::grg(), ier::WeightModel::uniform01(8));
  const auto phi = problem.initial();
  for (auto _ : state) benchmark::DoNotOptimize(problem.apply(phi));
}
BENCHMARK(BM_ApplyF)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_SparseStieltjes(benchmark::State& state) {
  ier::SolverConfig cfg;
  cfg.lambda = static_cast<double>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(ier::stieltjes_sparse(cfg, ier::Kernel::constant(1.0), ier::WeightModel::dirac(1.0)));
}
BENCHMARK(BM_SparseStieltjes)->Arg(5)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_DenseStieltjes(benchmark::State& state) {
  const ier::cplx z{0.3, 0.05};
  for (auto _ : state)
    benchmark::DoNotOptimize(ier::stieltjes_dense(z, ier::Kernel::chung_lu(), ier::WeightModel::uniform01(32)));
}
BENCHMARK(BM_DenseStieltjes)->Unit(benchmark::kMillisecond);
