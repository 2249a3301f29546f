// Parallel kernels vs. their serial references, plus the reduction they feed.
//
//   ./build/bench/bench_kernels --benchmark_filter=Pairwise

#include <random>

#include <benchmark/benchmark.h>

#include "devtopo/filtration.hpp"
#include "devtopo/kmeans.hpp"
#include "devtopo/metric.hpp"
#include "devtopo/persistence.hpp"

namespace {

// Points along a noisy rising band in [-1, 1]^dims, roughly like scaled
// development indicators.
devtopo::Grid<double> band_cloud(std::size_t n, std::size_t dims, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> t(-1.0, 1.0);
  std::normal_distribution<double> noise(0.0, 0.15);
  devtopo::Grid<double> g(n, dims);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = t(rng);
    for (std::size_t j = 0; j < dims; ++j)
      g(i, j) = std::clamp(s * (j % 2 ? 0.6 : 1.0) + noise(rng), -1.0, 1.0);
  }
  return g;
}

void BM_PairwiseParallel(benchmark::State& st) {
  const auto pts = band_cloud(std::size_t(st.range(0)), 4, 1);
  for (auto _ : st) benchmark::DoNotOptimize(devtopo::pairwise(pts));
}
void BM_PairwiseSerial(benchmark::State& st) {
  const auto pts = band_cloud(std::size_t(st.range(0)), 4, 1);
  for (auto _ : st) benchmark::DoNotOptimize(devtopo::pairwise_serial(pts));
}
BENCHMARK(BM_PairwiseParallel)->Arg(194)->Arg(1000);
BENCHMARK(BM_PairwiseSerial)->Arg(194)->Arg(1000);

void BM_FiltrationParallel(benchmark::State& st) {
  const auto d = devtopo::pairwise(band_cloud(std::size_t(st.range(0)), 2, 2));
  for (auto _ : st) benchmark::DoNotOptimize(devtopo::build_filtration(d, 2, 0.5));
}
void BM_FiltrationSerial(benchmark::State& st) {
  const auto d = devtopo::pairwise(band_cloud(std::size_t(st.range(0)), 2, 2));
  for (auto _ : st) benchmark::DoNotOptimize(devtopo::build_filtration_serial(d, 2, 0.5));
}
BENCHMARK(BM_FiltrationParallel)->Arg(100)->Arg(194)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FiltrationSerial)->Arg(100)->Arg(194)->Unit(benchmark::kMillisecond);

void BM_Reduce(benchmark::State& st) {
  const auto d = devtopo::pairwise(band_cloud(std::size_t(st.range(0)), 2, 3));
  const auto f = devtopo::build_filtration(d, 2, 1.0);
  st.counters["simplices"] = double(f.size());
  for (auto _ : st) benchmark::DoNotOptimize(devtopo::reduce(f));
}
BENCHMARK(BM_Reduce)->Arg(100)->Arg(194)->Unit(benchmark::kMillisecond);

void BM_KMeansParallel(benchmark::State& st) {
  const auto pts = band_cloud(194, 4, 4);
  devtopo::KMeansOptions o{std::size_t(st.range(0)), 100, 7, 300};
  for (auto _ : st) benchmark::DoNotOptimize(devtopo::kmeans(pts, o));
}
void BM_KMeansSerial(benchmark::State& st) {
  const auto pts = band_cloud(194, 4, 4);
  devtopo::KMeansOptions o{std::size_t(st.range(0)), 100, 7, 300};
  for (auto _ : st) benchmark::DoNotOptimize(devtopo::kmeans_serial(pts, o));
}
BENCHMARK(BM_KMeansParallel)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KMeansSerial)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
