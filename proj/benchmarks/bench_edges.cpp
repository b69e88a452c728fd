#include <benchmark/benchmark.h>

#include "sharpdepth/metrics.hpp"
#include "sharpdepth/scene.hpp"

using namespace sharpdepth;

static void CannyBench(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const SyntheticScene scene = gen_scene(0, side, side);
  for (auto _ : state) {
    EdgeMap e = canny(scene.gt.values);
    benchmark::DoNotOptimize(e);
  }
  state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(CannyBench)->Arg(128)->Arg(512);

static void DistanceTransformBench(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const SyntheticScene scene = gen_scene(1, side, side);
  const EdgeMap e = canny(scene.gt.values);
  for (auto _ : state) {
    Grid<double> d = distance_transform(e);
    benchmark::DoNotOptimize(d);
  }
  state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(DistanceTransformBench)->Arg(128)->Arg(512);

static void PdbeBench(benchmark::State& state) {
  const SyntheticScene scene = gen_scene(2, 256, 256);
  for (auto _ : state) {
    BoundaryMetrics m = pdbe(scene.metric_input, scene.gt);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(PdbeBench);
