#include <algorithm>
#include <cmath>
#include <vector>

#include "sharpdepth/metrics.hpp"
#include "sharpdepth/scene.hpp"

namespace sharpdepth {

namespace {

Grid<double> rescale_unit(const Grid<double>& g) {
  double lo = g.data[0], hi = g.data[0];
  for (double v : g.data) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  Grid<double> out(g.width, g.height);
  if (hi > lo) {
    const double span = hi - lo;
    for (size_t i = 0; i < g.size(); ++i) out.data[i] = (g.data[i] - lo) / span;
  }
  return out;  // constant input stays all-zero
}

// Gradient direction quantized to 4 bins: 0 = horizontal (E-W neighbors),
// 1 = 45 deg (NE-SW), 2 = vertical (N-S), 3 = 135 deg (NW-SE).
int quantize_direction(double gx, double gy) {
  double angle = std::atan2(gy, gx) * 180.0 / 3.141592653589793238462643383279502884;
  if (angle < 0.0) angle += 180.0;
  if (angle < 22.5 || angle >= 157.5) return 0;
  if (angle < 67.5) return 1;
  if (angle < 112.5) return 2;
  return 3;
}

}  // namespace

EdgeMap canny(const Grid<double>& grid, const CannyConfig& cfg) {
  const int w = grid.width;
  const int h = grid.height;
  Grid<double> img = cfg.normalize_input ? rescale_unit(grid) : grid;
  if (cfg.gaussian_sigma > 0.0) img = gaussian_blur(img, cfg.gaussian_sigma);

  Grid<double> mag(w, h);
  Grid<uint8_t> dir(w, h);
  double max_mag = 0.0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double gx =
          (img.at(std::min(x + 1, w - 1), y) - img.at(std::max(x - 1, 0), y)) / 2.0;
      const double gy =
          (img.at(x, std::min(y + 1, h - 1)) - img.at(x, std::max(y - 1, 0))) / 2.0;
      const double m = std::hypot(gx, gy);
      mag.at(x, y) = m;
      dir.at(x, y) = static_cast<uint8_t>(quantize_direction(gx, gy));
      max_mag = std::max(max_mag, m);
    }
  }

  EdgeMap result(w, h);
  if (max_mag <= 0.0) return result;
  const double low = cfg.low_threshold * max_mag;
  const double high = cfg.high_threshold * max_mag;

  // 0 = suppressed, 1 = weak, 2 = strong
  Grid<uint8_t> state(w, h, 0);
  static constexpr int kOffsets[4][2] = {{1, 0}, {1, -1}, {0, 1}, {1, 1}};
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double m = mag.at(x, y);
      if (m < low) continue;
      const auto& off = kOffsets[dir.at(x, y)];
      double n1 = 0.0, n2 = 0.0;
      const int x1 = x + off[0], y1 = y + off[1];
      const int x2 = x - off[0], y2 = y - off[1];
      if (x1 >= 0 && x1 < w && y1 >= 0 && y1 < h) n1 = mag.at(x1, y1);
      if (x2 >= 0 && x2 < w && y2 >= 0 && y2 < h) n2 = mag.at(x2, y2);
      if (m < n1 || m < n2) continue;  // not a ridge along the gradient
      if (m >= high) {
        state.at(x, y) = 2;
        stack.emplace_back(x, y);
      } else {
        state.at(x, y) = 1;
      }
    }
  }

  // Hysteresis: weak pixels survive only when 8-connected to a strong one.
  while (!stack.empty()) {
    const auto [x, y] = stack.back();
    stack.pop_back();
    result.edges.at(x, y) = 1;
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const int nx = x + dx, ny = y + dy;
        if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
        if (state.at(nx, ny) == 1) {
          state.at(nx, ny) = 2;
          stack.emplace_back(nx, ny);
        }
      }
    }
  }
  return result;
}

}  // namespace sharpdepth
