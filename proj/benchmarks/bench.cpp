#include <benchmark/benchmark.h>

#include "schles/heun.hpp"
#include "schles/hypergeometric.hpp"
#include "schles/modification.hpp"
#include "schles/monodromy.hpp"
#include "schles/painleve.hpp"
#include "schles/sampling.hpp"

using namespace schles;

static void BM_PairModify(benchmark::State& state) {
  Rng rng(kDefaultSeed);
  const FuchsianSystem S = random_system(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pair_modify(S, {0, 1}));
}
BENCHMARK(BM_PairModify)->Arg(3)->Arg(4)->Arg(5);

static void BM_LongShift(benchmark::State& state) {
  Rng rng(kDefaultSeed);
  const FuchsianSystem S = random_system(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(long_shift(S, 0));
}
BENCHMARK(BM_LongShift)->Arg(3)->Arg(5);

static void BM_Monodromy(benchmark::State& state) {
  Rng rng(kDefaultSeed);
  const FuchsianSystem S = random_system(rng, 4);
  const LoopPlan plan = make_plan(S);
  PathOptions opts;
  opts.tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(monodromy(S, plan, opts));
}
BENCHMARK(BM_Monodromy)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMicrosecond);

static void BM_Gauss2F1(benchmark::State& state) {
  const HypergeomParams p{cplx(0.3, 0.1), 0.7, cplx(1.4, -0.2)};
  const cplx z(0.2 * static_cast<double>(state.range(0)), 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(gauss_2f1_series(p, z));
}
BENCHMARK(BM_Gauss2F1)->DenseRange(1, 3);

static void BM_HeunSeries(benchmark::State& state) {
  const HeunParams p{3.0, 0.31, 0.4, 0.6, 1.2, 0.9};
  const cplx z(0.1 * static_cast<double>(state.range(0)), 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(heun_series(p, z));
}
BENCHMARK(BM_HeunSeries)->DenseRange(1, 8, 3);

static void BM_HeunExpressions(benchmark::State& state) {
  const HeunParams p{3.0, 0.31, 0.4, 0.6, 1.2, 0.9};
  for (auto _ : state) benchmark::DoNotOptimize(heun_expressions(p));
}
BENCHMARK(BM_HeunExpressions)->Unit(benchmark::kMicrosecond);

static void BM_SchlesingerFlow(benchmark::State& state) {
  Rng rng(kDefaultSeed);
  const FuchsianSystem S = schlesinger_system(0.3, random_sl2_residue(rng, 0.21), random_sl2_residue(rng, 0.33),
                                              random_sl2_residue(rng, 0.17));
  for (auto _ : state) benchmark::DoNotOptimize(schlesinger_flow(S, 0.6));
}
BENCHMARK(BM_SchlesingerFlow)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
