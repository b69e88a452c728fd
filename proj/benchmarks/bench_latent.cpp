#include <benchmark/benchmark.h>

#include "sharpdepth/refine.hpp"

using namespace sharpdepth;

static void EncodeDecode(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const SyntheticScene scene = gen_scene(0, side, side);
  const auto [norm, rec] = minmax_normalize(scene.metric_input);
  for (auto _ : state) {
    DepthMap out = decode_latent(encode_latent(norm, 4, 4));
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(EncodeDecode)->Arg(128)->Arg(512);

static void RefineScene(benchmark::State& state) {
  const SyntheticScene scene = gen_scene(0, 128, 128);
  RefineConfig cfg;
  cfg.steps = static_cast<int>(state.range(0));
  cfg.rounds = 1;
  cfg.timesteps = 10;
  for (auto _ : state) {
    RefineResult r = refine(scene, cfg);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(RefineScene)->Arg(50)->Arg(300)->Unit(benchmark::kMillisecond);
