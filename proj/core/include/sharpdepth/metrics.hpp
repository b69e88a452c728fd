#pragma once

#include "sharpdepth/depth_map.hpp"

namespace sharpdepth {

/// Inlier ratio threshold for delta1.
inline constexpr double kDelta1Threshold = 1.25;

struct DepthMetrics {
  double a_rel = 0.0;   // mean |pred - gt| / gt
  double rmse = 0.0;    // sqrt(mean (pred - gt)^2)
  double si_log = 0.0;  // 100 * stddev of log pred - log gt
  double delta1 = 0.0;  // fraction with max(pred/gt, gt/pred) < 1.25
};

/// Standard accuracy metrics over the pixels where `mask` and both validity
/// grids agree. Throws EmptyMask when no pixel qualifies and NonPositiveDepth
/// when a masked depth is <= 0.
DepthMetrics depth_metrics(const DepthMap& pred, const DepthMap& gt, const Mask& mask);

/// Convenience overload: mask = intersection of the two validity grids.
DepthMetrics depth_metrics(const DepthMap& pred, const DepthMap& gt);

struct EdgeMap {
  int width = 0;
  int height = 0;
  Mask edges;

  EdgeMap() = default;
  EdgeMap(int w, int h) : width(w), height(h), edges(w, h, 0) {}
  int count() const;
};

/// Canny parameters. Thresholds are fractions of the maximum gradient
/// magnitude after smoothing; with normalize_input the grid is first
/// min-max rescaled to [0, 1] so thresholds are depth-range-invariant.
struct CannyConfig {
  double gaussian_sigma = 1.0;
  double low_threshold = 0.1;
  double high_threshold = 0.2;
  bool normalize_input = true;
};

/// Gaussian smoothing, central-difference gradients, non-maximum suppression
/// along the quantized gradient direction, then double-threshold hysteresis.
EdgeMap canny(const Grid<double>& grid, const CannyConfig& cfg = {});

/// Exact Euclidean distance from every pixel to the nearest edge pixel;
/// +infinity everywhere when the edge set is empty.
Grid<double> distance_transform(const EdgeMap& edges);

struct BoundaryMetrics {
  double acc = 0.0;    // mean truncated distance, predicted edges -> gt edges
  double compl_ = 0.0; // mean truncated distance, gt edges -> predicted edges
  bool acc_defined = true;    // false when there were no predicted edges
  bool compl_defined = true;  // false when there were no gt edges
};

/// Truncated mean edge-to-edge distances. An empty source edge set yields 0
/// with the corresponding defined flag cleared; an empty target edge set
/// truncates every distance.
BoundaryMetrics dbe(const EdgeMap& pred_edges, const EdgeMap& gt_edges, double truncation = 10.0);

/// dbe over Canny edges of the two depth maps.
BoundaryMetrics pdbe(const DepthMap& pred, const DepthMap& gt, const CannyConfig& cfg = {},
                     double truncation = 10.0);

}  // namespace sharpdepth
