#include "projcov/special.hpp"

#include <benchmark/benchmark.h>

using namespace projcov;

static void BM_NormalQuantile(benchmark::State& state) {
  double u = 1e-6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(special::normal_quantile(u));
    u = u < 0.999 ? u + 1e-3 : 1e-6;
  }
}
BENCHMARK(BM_NormalQuantile);

static void BM_MaxGaussCutoff(benchmark::State& state) {
  const auto m = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(special::max_gauss_cutoff(m, 0.05, Sidedness::TwoSided));
}
BENCHMARK(BM_MaxGaussCutoff)->Arg(10)->Arg(10000);

static void BM_FCdf(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(special::f_cdf(1.3, 200, 200));
}
BENCHMARK(BM_FCdf);

static void BM_Chi2Cdf(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(special::chi2_cdf(130.0, 100));
}
BENCHMARK(BM_Chi2Cdf);
