#include <benchmark/benchmark.h>

#include "rank1lab/convexity.hpp"
#include "rank1lab/injectivity.hpp"
#include "rank1lab/sampling.hpp"

using namespace rank1lab;

namespace {

Mat3 sample_f() { return sample_gl_plus(Seed{3}, 0.4); }

void BM_Cofactor(benchmark::State& state) {
  const Mat3 f = sample_f();
  for (auto _ : state) benchmark::DoNotOptimize(cofactor(f));
}
BENCHMARK(BM_Cofactor);

void BM_SymEigen(benchmark::State& state) {
  const Mat3 f = sample_f();
  const Mat3 b = f * f.transpose();
  for (auto _ : state) benchmark::DoNotOptimize(sym_eigen(b));
}
BENCHMARK(BM_SymEigen);

void BM_Cauchy(benchmark::State& state) {
  const Mat3 f = sample_f();
  const BlatzKo bk;
  for (auto _ : state) benchmark::DoNotOptimize(cauchy(bk, f));
}
BENCHMARK(BM_Cauchy);

void BM_SecondDerivative(benchmark::State& state) {
  const Mat3 f = sample_f();
  const SaintVenantKirchhoff svk;
  const Vec3 xi = sample_unit_vec(Seed{4});
  const Vec3 eta = sample_unit_vec(Seed{5});
  for (auto _ : state)
    benchmark::DoNotOptimize(rank_one_second_derivative(svk, f, xi, eta, default_second_step(f)));
}
BENCHMARK(BM_SecondDerivative);

void BM_EllipticityScan(benchmark::State& state) {
  ScanConfig cfg;
  cfg.n_F = static_cast<std::size_t>(state.range(0));
  cfg.n_dir = 100;
  cfg.threads = 1;
  const BlatzKo bk;
  for (auto _ : state) benchmark::DoNotOptimize(ellipticity_scan(bk, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 100);
}
BENCHMARK(BM_EllipticityScan)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_InjectivitySearch(benchmark::State& state) {
  ScanConfig cfg;
  cfg.n_search_F = 1;
  cfg.n_starts = static_cast<std::size_t>(state.range(0));
  cfg.threads = 1;
  const BlatzKo bk;
  for (auto _ : state) benchmark::DoNotOptimize(injectivity_search(bk, cfg));
}
BENCHMARK(BM_InjectivitySearch)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_PressureScan(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(blatzko_pressure_scan(1.0, 0.2, 20.0, 400));
}
BENCHMARK(BM_PressureScan);

}  // namespace

BENCHMARK_MAIN();
