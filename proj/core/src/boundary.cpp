#include <cmath>
#include <limits>
#include <vector>

#include "sharpdepth/errors.hpp"
#include "sharpdepth/metrics.hpp"

namespace sharpdepth {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 1-D squared distance transform (lower envelope of parabolas).
void dt_1d(const std::vector<double>& f, std::vector<double>& d, std::vector<int>& v,
           std::vector<double>& z) {
  const int n = static_cast<int>(f.size());
  int k = 0;
  v[0] = 0;
  z[0] = -kInf;
  z[1] = kInf;
  for (int q = 1; q < n; ++q) {
    if (f[q] == kInf) continue;
    if (f[v[k]] == kInf) {
      v[k] = q;
      continue;
    }
    double s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * q - 2.0 * v[k]);
    while (s <= z[k]) {
      --k;
      s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * q - 2.0 * v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kInf;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    if (f[v[0]] == kInf) {
      d[q] = kInf;
      continue;
    }
    while (z[k + 1] < q) ++k;
    const double dq = q - v[k];
    d[q] = dq * dq + f[v[k]];
  }
}

}  // namespace

Grid<double> distance_transform(const EdgeMap& edges) {
  const int w = edges.width;
  const int h = edges.height;
  Grid<double> sq(w, h);
  for (size_t i = 0; i < sq.size(); ++i) sq.data[i] = edges.edges.data[i] ? 0.0 : kInf;

  const int n = std::max(w, h);
  std::vector<double> f(n), d(n), z(n + 1);
  std::vector<int> v(n);

  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) f[y] = sq.at(x, y);
    f.resize(h);
    dt_1d(f, d, v, z);
    for (int y = 0; y < h; ++y) sq.at(x, y) = d[y];
    f.resize(n);
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) f[x] = sq.at(x, y);
    f.resize(w);
    dt_1d(f, d, v, z);
    for (int x = 0; x < w; ++x) sq.at(x, y) = d[x];
    f.resize(n);
  }

  Grid<double> out(w, h);
  for (size_t i = 0; i < out.size(); ++i) out.data[i] = std::sqrt(sq.data[i]);
  return out;
}

BoundaryMetrics dbe(const EdgeMap& pred_edges, const EdgeMap& gt_edges, double truncation) {
  if (pred_edges.width != gt_edges.width || pred_edges.height != gt_edges.height)
    throw DimensionMismatch("edge maps have mismatched dims");

  const Grid<double> dist_to_gt = distance_transform(gt_edges);
  const Grid<double> dist_to_pred = distance_transform(pred_edges);

  BoundaryMetrics m;
  double acc_sum = 0.0;
  int acc_n = 0;
  double compl_sum = 0.0;
  int compl_n = 0;
  for (size_t i = 0; i < dist_to_gt.size(); ++i) {
    if (pred_edges.edges.data[i]) {
      acc_sum += std::min(dist_to_gt.data[i], truncation);
      ++acc_n;
    }
    if (gt_edges.edges.data[i]) {
      compl_sum += std::min(dist_to_pred.data[i], truncation);
      ++compl_n;
    }
  }
  // An empty edge set leaves the mean undefined; report 0 with the flag
  // cleared so aggregation stays total.
  m.acc_defined = acc_n > 0;
  m.compl_defined = compl_n > 0;
  m.acc = acc_n > 0 ? acc_sum / acc_n : 0.0;
  m.compl_ = compl_n > 0 ? compl_sum / compl_n : 0.0;
  return m;
}

BoundaryMetrics pdbe(const DepthMap& pred, const DepthMap& gt, const CannyConfig& cfg,
                     double truncation) {
  return dbe(canny(pred.values, cfg), canny(gt.values, cfg), truncation);
}

}  // namespace sharpdepth
