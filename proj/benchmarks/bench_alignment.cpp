#include <benchmark/benchmark.h>

#include "sharpdepth/alignment.hpp"
#include "sharpdepth/rng.hpp"

using namespace sharpdepth;

namespace {

DepthMap random_depth(int side, uint64_t seed) {
  Rng rng(seed);
  DepthMap m(side, side, DepthKind::kMetric);
  for (double& v : m.values.data) v = rng.uniform(0.5, 8.0);
  return m;
}

}  // namespace

static void FitScaleShift(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const DepthMap src = random_depth(side, 1);
  const DepthMap dst = random_depth(side, 2);
  for (auto _ : state) {
    AffineTransform a = fit_scale_shift(src, dst);
    benchmark::DoNotOptimize(a);
  }
  state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(FitScaleShift)->Arg(64)->Arg(256)->Arg(1024);

static void DifferenceMapBench(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const DepthMap metric = random_depth(side, 3);
  DepthMap rel = metric;
  rel.kind = DepthKind::kAffineInvariant;
  for (double& v : rel.values.data) v = 1.4 * v - 0.2;
  for (auto _ : state) {
    DifferenceMap e = difference_map(rel, metric);
    benchmark::DoNotOptimize(e);
  }
  state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(DifferenceMapBench)->Arg(128)->Arg(512);
