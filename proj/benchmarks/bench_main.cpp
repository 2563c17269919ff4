#include <benchmark/benchmark.h>

#include <cstdint>

#include "pvlt/exactdist.hpp"
#include "pvlt/increments.hpp"
#include "pvlt/paths.hpp"
#include "pvlt/pv.hpp"

namespace {

void BM_SampleBrownian(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(pvlt::sample_brownian(n, 1.0, seed++));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleBrownian)->RangeMultiplier(4)->Range(1 << 10, 1 << 20);

void BM_DecomposeAtLastZero(benchmark::State& state) {
  const auto w = pvlt::sample_brownian(1 << 14, 1.0, 7);
  for (auto _ : state) benchmark::DoNotOptimize(pvlt::decompose_at_last_zero(w));
}
BENCHMARK(BM_DecomposeAtLastZero);

void BM_PvRiemann(benchmark::State& state) {
  const auto w = pvlt::sample_brownian(static_cast<std::size_t>(state.range(0)), 1.0, 3);
  const auto est = pvlt::PvEstimator::riemann();
  for (auto _ : state) benchmark::DoNotOptimize(est.evaluate(w));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PvRiemann)->RangeMultiplier(4)->Range(1 << 10, 1 << 20);

void BM_PvLocalTime(benchmark::State& state) {
  const auto w = pvlt::sample_brownian(static_cast<std::size_t>(state.range(0)), 1.0, 3);
  const double h = pvlt::default_bin_width(w.dt());
  for (auto _ : state) benchmark::DoNotOptimize(pvlt::pv_localtime(w, 1.0, h));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PvLocalTime)->RangeMultiplier(4)->Range(1 << 10, 1 << 20);

void BM_Y1Cdf(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(pvlt::y1_cdf(x));
}
BENCHMARK(BM_Y1Cdf)->Arg(1)->Arg(10)->Arg(50);

void BM_Y1Density(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(pvlt::y1_density(x));
}
BENCHMARK(BM_Y1Density)->Arg(1)->Arg(10)->Arg(50);

void BM_MeanderIntegral(benchmark::State& state) {
  const auto form = state.range(0) ? pvlt::MeanderForm::DualTheta : pvlt::MeanderForm::PolynomialGaussian;
  for (auto _ : state) benchmark::DoNotOptimize(pvlt::meander_integral_cdf(2.0, form));
}
BENCHMARK(BM_MeanderIntegral)->Arg(0)->Arg(1);

void BM_SupSupIncrement(benchmark::State& state) {
  const auto w = pvlt::sample_brownian(static_cast<std::size_t>(state.range(0)), 1.0, 5);
  const pvlt::GridSeries s(w);
  for (auto _ : state) benchmark::DoNotOptimize(pvlt::sup_sup_increment(s, 1.0, 1.0 / 64.0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SupSupIncrement)->RangeMultiplier(4)->Range(1 << 10, 1 << 20);

void BM_InfSupIncrement(benchmark::State& state) {
  const auto w = pvlt::sample_brownian(static_cast<std::size_t>(state.range(0)), 1.0, 5);
  const pvlt::GridSeries s(w);
  for (auto _ : state) benchmark::DoNotOptimize(pvlt::inf_sup_increment(s, 1.0, 1.0 / 64.0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_InfSupIncrement)->RangeMultiplier(4)->Range(1 << 10, 1 << 20);

}  // namespace
BENCHMARK_MAIN();
