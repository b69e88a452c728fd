#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

namespace sharpdepth {

/// Dense row-major 2-D grid. (0,0) is the top-left pixel, x grows right,
/// y grows down.
template <typename T>
struct Grid {
  int width = 0;
  int height = 0;
  std::vector<T> data;

  Grid() = default;
  Grid(int w, int h, T fill = T{}) : width(w), height(h), data(static_cast<size_t>(w) * h, fill) {}

  T& at(int x, int y) {
    assert(x >= 0 && x < width && y >= 0 && y < height);
    return data[static_cast<size_t>(y) * width + x];
  }
  const T& at(int x, int y) const {
    assert(x >= 0 && x < width && y >= 0 && y < height);
    return data[static_cast<size_t>(y) * width + x];
  }

  size_t size() const { return data.size(); }

  template <typename U>
  bool same_dims(const Grid<U>& other) const {
    return width == other.width && height == other.height;
  }

  bool operator==(const Grid& other) const = default;
};

using Mask = Grid<uint8_t>;

}  // namespace sharpdepth
