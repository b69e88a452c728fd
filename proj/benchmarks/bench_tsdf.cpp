#include <benchmark/benchmark.h>

#include "sharpdepth/tsdf.hpp"

using namespace sharpdepth;

static void TsdfIntegrate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CameraIntrinsics cam{120.0, 120.0, 64.0, 64.0};
  DepthMap plane(128, 128, DepthKind::kMetric);
  for (double& v : plane.values.data) v = 2.0;

  for (auto _ : state) {
    TsdfVolume vol({-0.6, -0.6, 1.6}, 1.2 / n, n, n, n, 0.1);
    tsdf_integrate(vol, plane, cam, Pose{});
    benchmark::DoNotOptimize(vol);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n) * n * n);
}
BENCHMARK(TsdfIntegrate)->Arg(32)->Arg(64)->Arg(128);
