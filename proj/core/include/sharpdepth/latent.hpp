#pragma once

#include "sharpdepth/depth_map.hpp"
#include "sharpdepth/rng.hpp"

namespace sharpdepth {

/// Low-resolution multi-channel grid standing in for a latent-space tensor.
/// Values are stored as channel planes: index (c, x, y) maps to
/// data[(c * height + y) * width + x].
struct LatentGrid {
  int width = 0;
  int height = 0;
  int channels = 0;
  int downsample_factor = 1;
  std::vector<double> values;

  LatentGrid() = default;
  LatentGrid(int w, int h, int c, int factor)
      : width(w), height(h), channels(c), downsample_factor(factor),
        values(static_cast<size_t>(w) * h * c, 0.0) {}

  double& at(int c, int x, int y) {
    return values[(static_cast<size_t>(c) * height + y) * width + x];
  }
  double at(int c, int x, int y) const {
    return values[(static_cast<size_t>(c) * height + y) * width + x];
  }

  size_t size() const { return values.size(); }
  bool same_shape(const LatentGrid& o) const {
    return width == o.width && height == o.height && channels == o.channels;
  }

  bool operator==(const LatentGrid& o) const = default;
};

/// Per-site blending weights in [0, 1] at latent resolution.
struct GateMap {
  int width = 0;
  int height = 0;
  Grid<double> values;

  GateMap() = default;
  GateMap(int w, int h) : width(w), height(h), values(w, h) {}
};

/// Area-average downsampling by `factor` with edge replication for
/// non-divisible dims; the block mean is replicated across all channels.
LatentGrid encode_latent(const DepthMap& m, int factor, int channels);

/// Same pooling applied to a bare grid (used for gradient pullback).
LatentGrid encode_grid(const Grid<double>& g, int factor, int channels);

/// Channel mean followed by bilinear upsampling by the stored factor,
/// clamped to [-1, 1]. Output dims are latent dims times factor; callers
/// crop when the source was padded.
DepthMap decode_latent(const LatentGrid& z);

/// decode_latent without the [-1, 1] clamp (diagnostics, gradients).
Grid<double> decode_to_grid(const LatentGrid& z);

/// Truncates a decoded map back to the pre-padding source dims.
DepthMap crop(const DepthMap& m, int width, int height);

/// Area-average downsample of a difference map to latent resolution,
/// clamped to [0, 1]. Invalid difference pixels already carry 1.
GateMap downsample_gate(const DifferenceMap& e, int latent_width, int latent_height);

/// Per-site convex combination: gate * noise + (1 - gate) * z, the gate
/// broadcast across channels. Throws DimensionMismatch on shape conflicts.
LatentGrid blend(const LatentGrid& z, const LatentGrid& noise, const GateMap& gate);

/// Standard-normal latent of the given shape.
LatentGrid gaussian_latent(int width, int height, int channels, int factor, Rng& rng);

/// Per-pixel |decode(encode(m)) - m| in the map's own units, the direct
/// measurement of what one trip through the latent bottleneck costs.
Grid<double> latent_roundtrip_error(const DepthMap& m, int factor, int channels);

}  // namespace sharpdepth
