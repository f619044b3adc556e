#include "projcov/randsrc.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace projcov;

static void BM_NextU64(benchmark::State& state) {
  rng::Stream s({1, {}});
  for (auto _ : state) benchmark::DoNotOptimize(s.next_u64());
}
BENCHMARK(BM_NextU64);

static void BM_Gaussian(benchmark::State& state) {
  rng::Stream s({1, {}});
  std::vector<double> buf(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    s.fill_gaussian(buf);
    benchmark::DoNotOptimize(buf.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Gaussian)->Arg(1024)->Arg(1 << 16);

static void BM_StreamSetup(benchmark::State& state) {
  std::uint64_t i = 0;
  for (auto _ : state) {
    rng::Stream s({7, {i++, 2}});
    benchmark::DoNotOptimize(s.next_u64());
  }
}
BENCHMARK(BM_StreamSetup);

static void BM_ProjectionSet(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  const auto m = static_cast<std::size_t>(state.range(1));
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(rng::projection_set(p, m, {3, {i++}}));
}
BENCHMARK(BM_ProjectionSet)->Args({128, 100})->Args({1024, 1000})->Unit(benchmark::kMicrosecond);
