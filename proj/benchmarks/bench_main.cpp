#include <benchmark/benchmark.h>

#include "chaoscalc/kg_operator.hpp"
#include "chaoscalc/montecarlo.hpp"
#include "chaoscalc/operators.hpp"
#include "chaoscalc/products.hpp"
#include "chaoscalc/random_chaos.hpp"
#include "chaoscalc/vmbv_integral.hpp"

using namespace chaoscalc;

static void BM_Contraction(benchmark::State& state) {
  const Grid g = Grid::make(1.0, static_cast<std::size_t>(state.range(0)));
  Rng rng = make_rng(1);
  const SymKernel f = random_kernel(3, g, rng, 0.5), h = random_kernel(3, g, rng, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(sym_contract(f, h, 1));
}
BENCHMARK(BM_Contraction)->Arg(8)->Arg(16);

static void BM_Pointwise(benchmark::State& state) {
  const Grid g = Grid::make(1.0, static_cast<std::size_t>(state.range(0)));
  Rng rng = make_rng(2);
  const ChaosVector a = random_vector(g, rng, 3, 0.5), b = random_vector(g, rng, 3, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(pointwise(a, b));
}
BENCHMARK(BM_Pointwise)->Arg(8)->Arg(16);

static void BM_Skorohod(benchmark::State& state) {
  const Grid g = Grid::make(1.0, static_cast<std::size_t>(state.range(0)));
  Rng rng = make_rng(3);
  const ChaosProcess p = random_process(g, rng, 2, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(skorohod_cells(p, 0, g.cells()));
}
BENCHMARK(BM_Skorohod)->Arg(8)->Arg(16)->Arg(32);

static void BM_KgApply(benchmark::State& state) {
  const Grid g = Grid::make(1.0, static_cast<std::size_t>(state.range(0)));
  Rng rng = make_rng(4);
  const ChaosProcess p = random_process(g, rng, 2, 0.3);
  const KgPlan plan = make_kg_plan(VolterraKernel::ou(1.0), g, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(kg_apply(p, plan));
}
BENCHMARK(BM_KgApply)->Arg(16)->Arg(32);

static void BM_IntegratePlain(benchmark::State& state) {
  const Grid g = Grid::make(1.0, static_cast<std::size_t>(state.range(0)));
  Rng rng = make_rng(5);
  const ChaosProcess p = random_process(g, rng, 2, 0.3);
  const VolterraKernel k = VolterraKernel::fbm(0.7);
  for (auto _ : state) benchmark::DoNotOptimize(integrate_plain(p, k, 1.0));
}
BENCHMARK(BM_IntegratePlain)->Arg(8)->Arg(16);

static void BM_Evaluate(benchmark::State& state) {
  const Grid g = Grid::make(1.0, 16);
  Rng rng = make_rng(6);
  const ChaosVector v = random_vector(g, rng, static_cast<std::size_t>(state.range(0)), 0.5);
  const NoiseVector w = sample_noise(g, 7);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(v, w));
}
BENCHMARK(BM_Evaluate)->Arg(2)->Arg(3)->Arg(4);

BENCHMARK_MAIN();
