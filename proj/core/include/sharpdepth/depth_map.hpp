#pragma once

#include <string>

#include "sharpdepth/grid.hpp"

namespace sharpdepth {

enum class DepthKind {
  kMetric,           // absolute depth in meters, positive where valid
  kAffineInvariant,  // depth up to an unknown global scale and shift
  kNormalized,       // values in [-1, 1]
};

std::string to_string(DepthKind kind);

/// Depth image with a per-pixel validity mask.
struct DepthMap {
  Grid<double> values;
  Mask valid;
  DepthKind kind = DepthKind::kMetric;

  DepthMap() = default;
  DepthMap(int w, int h, DepthKind k = DepthKind::kMetric)
      : values(w, h), valid(w, h, 1), kind(k) {}

  int width() const { return values.width; }
  int height() const { return values.height; }
  bool same_dims(const DepthMap& other) const { return values.same_dims(other.values); }

  int count_valid() const;

  /// Throws if the kind-specific invariants do not hold (finite values where
  /// valid, positive for metric, [-1,1] for normalized).
  void check() const;
};

/// Global scale/shift pair, applied as scale * x + shift.
struct AffineTransform {
  double scale = 1.0;
  double shift = 0.0;
};

/// Min/max pair remembered by minmax_normalize so the mapping can be undone.
struct NormalizationRecord {
  double min_value = 0.0;
  double max_value = 1.0;
};

/// Per-pixel disagreement between an aligned affine-invariant depth and a
/// metric depth, normalized to [0, 1]. Pixels invalid in either input carry
/// the value 1 (maximal uncertainty) and valid = false.
struct DifferenceMap {
  Grid<double> values;
  Mask valid;
  double normalizer = 1.0;   // divisor that mapped raw residuals to [0,1]
  double mean_raw = 0.0;     // mean absolute residual over valid pixels, meters

  DifferenceMap() = default;
  DifferenceMap(int w, int h) : values(w, h), valid(w, h, 1) {}

  int width() const { return values.width; }
  int height() const { return values.height; }
};

}  // namespace sharpdepth
