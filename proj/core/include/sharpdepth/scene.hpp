#pragma once

#include "sharpdepth/latent.hpp"

namespace sharpdepth {

/// Self-contained refinement test scene. `gt` is the sharp reference,
/// `metric_input` the accurate-but-smooth estimate (blurred gt plus a gentle
/// bias field), `teacher_target` a recorded affine transform of gt standing
/// in for a sharp scale-ambiguous prediction.
struct SyntheticScene {
  DepthMap gt;              // metric, piecewise planar, sharp
  DepthMap metric_input;    // metric, blurred + low-frequency bias
  DepthMap teacher_target;  // affine invariant: a * gt + b
  LatentGrid image;         // conditioning latent derived from gt edges
  double affine_scale = 1.0;
  double affine_shift = 0.0;
  uint64_t seed = 0;
};

/// Separable Gaussian blur with edge replication; radius = ceil(3 sigma).
Grid<double> gaussian_blur(const Grid<double>& g, double sigma);

/// Conditioning latent used across the pipeline: gradient magnitude of the
/// grid scaled to [0, 1], then encoded.
LatentGrid make_condition_latent(const Grid<double>& values, int factor, int channels);

/// Deterministic piecewise-planar scene with at least three depth
/// discontinuities and thin (1-2 px) bars. Dims must be >= 16.
SyntheticScene gen_scene(uint64_t seed, int width, int height, int latent_factor = 4,
                         int latent_channels = 4);

}  // namespace sharpdepth
