#include <benchmark/benchmark.h>

#include <numbers>

#include "fansq/fansq.hpp"

using namespace fansq;

// Fresh state per iteration: normalization plus one cold moment.
static void BM_MomentCold(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const FanState st(FanConfig::trapped_ion(k, 0.5, 0.2));
    benchmark::DoNotOptimize(st.moment(8, 8));
  }
}
BENCHMARK(BM_MomentCold)->Arg(1)->Arg(2)->Arg(3);

static void BM_Coefficients(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const SqueezeOrder order(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(coefficients(FanConfig::trapped_ion(k, 0.1, 0.2), order));
}
BENCHMARK(BM_Coefficients)->Args({1, 4})->Args({1, 16})->Args({3, 12})->Args({3, 24});

static void BM_ScanRow(benchmark::State& state) {
  GridSpec g;
  g.xi_sq = {0.01, 1.0, static_cast<int>(state.range(0))};
  g.eta_sq = {0.2, 0.21, 2};
  g.k = 1;
  g.order = 4;
  g.phi = std::numbers::pi / 4;
  for (auto _ : state) benchmark::DoNotOptimize(scan(g, ModelKind::TrappedIon, {}, 1));
  state.SetItemsProcessed(state.iterations() * 2 * state.range(0));
}
BENCHMARK(BM_ScanRow)->Arg(101);

static void BM_Intersections(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(
        find_intersections(0.1, 3, SqueezeOrder(12), {0.05, 0.45, 401}, ModelKind::TrappedIon));
}
BENCHMARK(BM_Intersections)->Unit(benchmark::kMillisecond);

static void BM_QuadratureMoment(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const FanState st(FanConfig::trapped_ion(1, 0.5, 0.2));
  const FockVector v = oracle_vector(st, order);
  for (auto _ : state) benchmark::DoNotOptimize(quadrature_moment(v, 0.3, order));
}
BENCHMARK(BM_QuadratureMoment)->Arg(4)->Arg(16);

BENCHMARK_MAIN();
