#include "sharpdepth/scene.hpp"

#include <algorithm>
#include <cmath>

#include "sharpdepth/alignment.hpp"
#include "sharpdepth/errors.hpp"

namespace sharpdepth {

Grid<double> gaussian_blur(const Grid<double>& g, double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(static_cast<size_t>(2 * radius + 1));
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    kernel[i + radius] = std::exp(-0.5 * (i * i) / (sigma * sigma));
    sum += kernel[i + radius];
  }
  for (double& k : kernel) k /= sum;

  Grid<double> tmp(g.width, g.height);
  for (int y = 0; y < g.height; ++y) {
    for (int x = 0; x < g.width; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        const int xi = std::clamp(x + i, 0, g.width - 1);
        acc += kernel[i + radius] * g.at(xi, y);
      }
      tmp.at(x, y) = acc;
    }
  }
  Grid<double> out(g.width, g.height);
  for (int y = 0; y < g.height; ++y) {
    for (int x = 0; x < g.width; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        const int yi = std::clamp(y + i, 0, g.height - 1);
        acc += kernel[i + radius] * tmp.at(x, yi);
      }
      out.at(x, y) = acc;
    }
  }
  return out;
}

namespace {

void paint_rect(Grid<double>& g, int x0, int y0, int w, int h, double depth) {
  for (int y = std::max(0, y0); y < std::min(g.height, y0 + h); ++y)
    for (int x = std::max(0, x0); x < std::min(g.width, x0 + w); ++x)
      g.at(x, y) = depth;
}

}  // namespace

SyntheticScene gen_scene(uint64_t seed, int width, int height, int latent_factor,
                         int latent_channels) {
  if (width < 16 || height < 16) throw DimensionMismatch("scene dims must be >= 16");
  Rng rng(seed ^ 0x5ca1ab1e5eedULL);

  SyntheticScene scene;
  scene.seed = seed;

  // Background plane with a gentle tilt, everything in front of it.
  const double base = rng.uniform(3.6, 4.2);
  const double slope_x = rng.uniform(-0.004, 0.004);
  const double slope_y = rng.uniform(-0.004, 0.004);
  Grid<double> gt(width, height);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      gt.at(x, y) = base + slope_x * (x - width / 2) + slope_y * (y - height / 2);

  // One dominant foreground box; its step sets the gradient ceiling the
  // Canny thresholds normalize against.
  const double strong_delta = rng.uniform(1.6, 2.0);
  const int sw = rng.uniform_int(width / 3, width / 2);
  const int sh = rng.uniform_int(height / 3, height / 2);
  const int sx = rng.uniform_int(1, width - sw - 2);
  const int sy = rng.uniform_int(1, height - sh - 2);
  paint_rect(gt, sx, sy, sw, sh, base - strong_delta);

  // A few mid-contrast boxes for scene structure; their edges survive the
  // blur, so they contribute equally to both sides of the comparison.
  const int boxes = 3 + rng.uniform_int(0, 1);
  for (int i = 0; i < boxes; ++i) {
    const int w = rng.uniform_int(width / 8, width / 4);
    const int h = rng.uniform_int(height / 8, height / 4);
    const double depth = base - strong_delta * rng.uniform(0.25, 0.35);
    for (int attempt = 0; attempt < 20; ++attempt) {
      const int x0 = rng.uniform_int(1, width - w - 2);
      const int y0 = rng.uniform_int(1, height - h - 2);
      const bool hits_strong =
          x0 < sx + sw && x0 + w > sx && y0 < sy + sh && y0 + h > sy;
      if (hits_strong) continue;
      paint_rect(gt, x0, y0, w, h, depth);
      break;
    }
  }

  // Thin bars carry the bulk of the boundary length. Their contrast sits
  // where the blur pushes the gradient under the relative Canny threshold
  // while block pooling keeps enough amplitude to stay above it.
  const int bars = 4 + rng.uniform_int(0, 2);
  for (int i = 0; i < bars; ++i) {
    const int thickness = rng.uniform_int(1, 2);
    const double depth = base - strong_delta * rng.uniform(0.45, 0.65);
    if (i % 2 == 0) {
      const int x0 = rng.uniform_int(2, width - 4);
      const int len = rng.uniform_int(2 * height / 3, height - 2);
      const int y0 = rng.uniform_int(0, height - len - 1);
      paint_rect(gt, x0, y0, thickness, len, depth);
    } else {
      const int y0 = rng.uniform_int(2, height - 4);
      const int len = rng.uniform_int(2 * width / 3, width - 2);
      const int x0 = rng.uniform_int(0, width - len - 1);
      paint_rect(gt, x0, y0, len, thickness, depth);
    }
  }

  scene.gt = DepthMap(width, height, DepthKind::kMetric);
  scene.gt.values = gt;

  // Smooth estimate: blur plus a low-frequency bias of <= 2% of the range.
  double lo = gt.data[0], hi = gt.data[0];
  for (double v : gt.data) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double range = hi - lo;
  const double bias_amp = 0.02 * range * rng.uniform(0.5, 1.0);
  const double fx = rng.uniform(0.5, 1.5);
  const double fy = rng.uniform(0.5, 1.5);
  const double px = rng.uniform(0.0, 6.283185307179586);
  const double py = rng.uniform(0.0, 6.283185307179586);

  Grid<double> blurred = gaussian_blur(gt, 2.0);
  scene.metric_input = DepthMap(width, height, DepthKind::kMetric);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double bias = bias_amp * std::sin(6.283185307179586 * fx * x / width + px) *
                          std::sin(6.283185307179586 * fy * y / height + py);
      scene.metric_input.values.at(x, y) = blurred.at(x, y) + bias;
    }
  }

  // Sharp but scale/shift-ambiguous counterpart.
  scene.affine_scale = rng.uniform(0.5, 2.0);
  scene.affine_shift = rng.uniform(-1.0, 1.0);
  scene.teacher_target = DepthMap(width, height, DepthKind::kAffineInvariant);
  for (size_t i = 0; i < gt.size(); ++i)
    scene.teacher_target.values.data[i] = scene.affine_scale * gt.data[i] + scene.affine_shift;

  scene.image = make_condition_latent(gt, latent_factor, latent_channels);

  return scene;
}

LatentGrid make_condition_latent(const Grid<double>& values, int factor, int channels) {
  Grid<double> edge(values.width, values.height);
  double edge_max = 0.0;
  for (int y = 0; y < values.height; ++y) {
    for (int x = 0; x < values.width; ++x) {
      const double gx = values.at(std::min(x + 1, values.width - 1), y) -
                        values.at(std::max(x - 1, 0), y);
      const double gy = values.at(x, std::min(y + 1, values.height - 1)) -
                        values.at(x, std::max(y - 1, 0));
      edge.at(x, y) = std::hypot(gx, gy);
      edge_max = std::max(edge_max, edge.at(x, y));
    }
  }
  if (edge_max > 0.0)
    for (double& v : edge.data) v /= edge_max;
  return encode_grid(edge, factor, channels);
}

}  // namespace sharpdepth
