#include <benchmark/benchmark.h>

#include "densecount/density.hpp"
#include "densecount/knn.hpp"
#include "densecount/predictor.hpp"
#include "densecount/synthetic.hpp"

namespace {

using namespace densecount;

PointAnnotationSet points(std::size_t n) {
  SplitMix64 rng(n);
  return synthetic::uniform_points("bench", 600, 800, n, rng);
}

void BM_AdaptiveDensity(benchmark::State& state) {
  const auto set = points(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(generate_density_map(set, KernelSpec::adaptive()));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AdaptiveDensity)->Arg(133)->Arg(1110)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_FixedDensity(benchmark::State& state) {
  const auto set = points(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(generate_density_map(set, KernelSpec::fixed(4.0)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FixedDensity)->Arg(133)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_KdTreeAllPoints(benchmark::State& state) {
  const auto set = points(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    const KdTree tree(set.points);
    double s = 0;
    for (std::size_t i = 0; i < set.points.size(); ++i) s += tree.mean_distance(i, 3);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_KdTreeAllPoints)->Arg(200)->Arg(2000)->Arg(20000);

void BM_LinearKnnAllPoints(benchmark::State& state) {
  const auto set = points(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    double s = 0;
    for (std::size_t i = 0; i < set.points.size(); ++i) s += knn_mean_distance(set.points, i, 3);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_LinearKnnAllPoints)->Arg(200)->Arg(2000);

void BM_Baseline(benchmark::State& state) {
  SplitMix64 rng(3);
  const auto set = synthetic::separated_points("b", 320, 240, 100, 20.0, 8.0, rng);
  const auto img = synthetic::blob_scene(set, 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(baseline_predict(img));
}
BENCHMARK(BM_Baseline)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
