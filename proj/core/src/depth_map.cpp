#include "sharpdepth/depth_map.hpp"

#include <cmath>

#include "sharpdepth/errors.hpp"

namespace sharpdepth {

std::string to_string(DepthKind kind) {
  switch (kind) {
    case DepthKind::kMetric: return "metric";
    case DepthKind::kAffineInvariant: return "affine_invariant";
    case DepthKind::kNormalized: return "normalized";
  }
  return "unknown";
}

int DepthMap::count_valid() const {
  int n = 0;
  for (uint8_t v : valid.data) n += v ? 1 : 0;
  return n;
}

void DepthMap::check() const {
  if (!values.same_dims(valid)) throw DimensionMismatch("depth map values/valid dims differ");
  for (size_t i = 0; i < values.size(); ++i) {
    if (!valid.data[i]) continue;
    const double v = values.data[i];
    if (!std::isfinite(v)) throw NonFinite("non-finite depth at valid pixel");
    if (kind == DepthKind::kMetric && v <= 0.0) throw NonPositiveDepth("metric depth must be positive");
    if (kind == DepthKind::kNormalized && (v < -1.0 || v > 1.0))
      throw NumericError("normalized depth outside [-1, 1]");
  }
}

}  // namespace sharpdepth
