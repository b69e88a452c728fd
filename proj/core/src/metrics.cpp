#include "sharpdepth/metrics.hpp"

#include <cmath>

#include "sharpdepth/errors.hpp"

namespace sharpdepth {

DepthMetrics depth_metrics(const DepthMap& pred, const DepthMap& gt, const Mask& mask) {
  if (!pred.same_dims(gt) || !pred.values.same_dims(mask))
    throw DimensionMismatch("metric inputs have mismatched dims");

  int n = 0;
  double sum_rel = 0.0, sum_sq = 0.0;
  int inliers = 0;
  std::vector<double> log_diffs;
  log_diffs.reserve(pred.values.size());
  for (size_t i = 0; i < pred.values.size(); ++i) {
    if (!mask.data[i] || !pred.valid.data[i] || !gt.valid.data[i]) continue;
    const double p = pred.values.data[i];
    const double g = gt.values.data[i];
    if (p <= 0.0 || g <= 0.0) throw NonPositiveDepth("depth metrics need positive depths");
    ++n;
    const double diff = p - g;
    sum_rel += std::abs(diff) / g;
    sum_sq += diff * diff;
    log_diffs.push_back(std::log(p) - std::log(g));
    if (std::max(p / g, g / p) < kDelta1Threshold) ++inliers;
  }
  if (n == 0) throw EmptyMask("depth metrics mask is empty");

  DepthMetrics m;
  const double inv_n = 1.0 / n;
  m.a_rel = sum_rel * inv_n;
  m.rmse = std::sqrt(sum_sq * inv_n);
  // Two-pass variance: exact zero for a constant log offset.
  double mean_g = 0.0;
  for (double g : log_diffs) mean_g += g;
  mean_g *= inv_n;
  double var_g = 0.0;
  for (double g : log_diffs) var_g += (g - mean_g) * (g - mean_g);
  m.si_log = 100.0 * std::sqrt(var_g * inv_n);
  m.delta1 = static_cast<double>(inliers) * inv_n;
  return m;
}

DepthMetrics depth_metrics(const DepthMap& pred, const DepthMap& gt) {
  if (!pred.same_dims(gt)) throw DimensionMismatch("metric inputs have mismatched dims");
  Mask mask(pred.width(), pred.height(), 1);
  return depth_metrics(pred, gt, mask);
}

int EdgeMap::count() const {
  int n = 0;
  for (uint8_t v : edges.data) n += v ? 1 : 0;
  return n;
}

}  // namespace sharpdepth
