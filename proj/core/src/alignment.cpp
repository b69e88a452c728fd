#include "sharpdepth/alignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sharpdepth/errors.hpp"

namespace sharpdepth {

std::pair<DepthMap, NormalizationRecord> minmax_normalize(const DepthMap& d) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < d.values.size(); ++i) {
    if (!d.valid.data[i]) continue;
    lo = std::min(lo, d.values.data[i]);
    hi = std::max(hi, d.values.data[i]);
  }
  if (!(hi > lo)) throw DegenerateRange("all valid depth values are equal; cannot normalize");

  DepthMap out(d.width(), d.height(), DepthKind::kNormalized);
  out.valid = d.valid;
  const double span = hi - lo;
  for (size_t i = 0; i < d.values.size(); ++i) {
    out.values.data[i] = d.valid.data[i] ? 2.0 * (d.values.data[i] - lo) / span - 1.0 : 0.0;
  }
  return {std::move(out), NormalizationRecord{lo, hi}};
}

DepthMap denormalize(const DepthMap& n, const NormalizationRecord& rec) {
  if (!(rec.max_value > rec.min_value)) throw DegenerateRange("normalization record has max <= min");
  DepthMap out(n.width(), n.height(), DepthKind::kMetric);
  out.valid = n.valid;
  const double span = rec.max_value - rec.min_value;
  for (size_t i = 0; i < n.values.size(); ++i) {
    out.values.data[i] = (n.values.data[i] + 1.0) / 2.0 * span + rec.min_value;
  }
  return out;
}

namespace {

struct NormalEquations {
  double n = 0, sx = 0, sxx = 0, sy = 0, sxy = 0;

  void add(double x, double y) {
    n += 1.0;
    sx += x;
    sxx += x * x;
    sy += y;
    sxy += x * y;
  }

  AffineTransform solve() const {
    if (n < 2.0) throw EmptyMask("scale/shift fit needs at least 2 pixels");
    const double det = n * sxx - sx * sx;
    // det = n^2 * var(x); vanishes exactly when the source is constant.
    const double scale_ref = n * sxx + sx * sx;
    if (std::abs(det) <= 1e-14 * std::max(scale_ref, 1.0))
      throw SingularSystem("source depth is constant on the fit mask");
    const double s = (n * sxy - sx * sy) / det;
    const double t = (sy - s * sx) / n;
    return {s, t};
  }
};

bool usable(const DepthMap& source, const DepthMap& target, const Mask& mask, size_t i) {
  return mask.data[i] && source.valid.data[i] && target.valid.data[i];
}

}  // namespace

AffineTransform fit_scale_shift(const DepthMap& source, const DepthMap& target, const Mask& mask) {
  if (!source.same_dims(target) || !source.values.same_dims(mask))
    throw DimensionMismatch("scale/shift fit inputs have mismatched dims");
  NormalEquations eq;
  for (size_t i = 0; i < source.values.size(); ++i) {
    if (usable(source, target, mask, i)) eq.add(source.values.data[i], target.values.data[i]);
  }
  return eq.solve();
}

AffineTransform fit_scale_shift(const DepthMap& source, const DepthMap& target) {
  Mask all(source.width(), source.height(), 1);
  return fit_scale_shift(source, target, all);
}

DepthMap apply_affine(const DepthMap& m, const AffineTransform& a) {
  DepthMap out = m;
  if (m.kind == DepthKind::kAffineInvariant) out.kind = DepthKind::kMetric;
  for (size_t i = 0; i < out.values.size(); ++i) {
    if (out.valid.data[i]) out.values.data[i] = a.scale * m.values.data[i] + a.shift;
  }
  return out;
}

double alignment_residual(const DepthMap& source, const DepthMap& target, const Mask& mask,
                          const AffineTransform& a) {
  double r = 0.0;
  for (size_t i = 0; i < source.values.size(); ++i) {
    if (!usable(source, target, mask, i)) continue;
    const double d = a.scale * source.values.data[i] + a.shift - target.values.data[i];
    r += d * d;
  }
  return r;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const size_t lo = static_cast<size_t>(std::floor(pos));
  const size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] * (1.0 - frac) + values[hi] * frac;
}

DifferenceMap difference_map(const DepthMap& d_rel, const DepthMap& d_metric,
                             const DifferenceOptions& opts) {
  return difference_map(d_rel, d_metric, fit_scale_shift(d_rel, d_metric), opts);
}

DifferenceMap difference_map(const DepthMap& d_rel, const DepthMap& d_metric,
                             const AffineTransform& fit, const DifferenceOptions& opts) {
  if (!d_rel.same_dims(d_metric)) throw DimensionMismatch("difference_map inputs have mismatched dims");

  DifferenceMap e(d_rel.width(), d_rel.height());
  std::vector<double> residuals;
  residuals.reserve(e.values.size());
  for (size_t i = 0; i < e.values.size(); ++i) {
    if (d_rel.valid.data[i] && d_metric.valid.data[i]) {
      const double aligned = fit.scale * d_rel.values.data[i] + fit.shift;
      e.values.data[i] = std::abs(aligned - d_metric.values.data[i]);
      e.valid.data[i] = 1;
      residuals.push_back(e.values.data[i]);
    } else {
      e.values.data[i] = 1.0;  // maximal uncertainty where either input is missing
      e.valid.data[i] = 0;
    }
  }

  double raw_sum = 0.0;
  for (double r : residuals) raw_sum += r;
  e.mean_raw = residuals.empty() ? 0.0 : raw_sum / static_cast<double>(residuals.size());

  const double div = quantile(std::move(residuals), opts.quantile) + opts.eps;
  e.normalizer = div;
  for (size_t i = 0; i < e.values.size(); ++i) {
    if (e.valid.data[i]) e.values.data[i] = std::clamp(e.values.data[i] / div, 0.0, 1.0);
  }
  return e;
}

AffineTransform masked_fit_scale_shift(const DepthMap& source, const DepthMap& target,
                                       const DifferenceMap& e, double tau) {
  if (!source.values.same_dims(e.values))
    throw DimensionMismatch("difference map dims do not match depth dims");
  Mask mask(source.width(), source.height(), 0);
  int kept = 0;
  for (size_t i = 0; i < mask.size(); ++i) {
    if (e.valid.data[i] && e.values.data[i] < tau) {
      mask.data[i] = 1;
      ++kept;
    }
  }
  if (kept < 2) throw EmptyMask("fewer than 2 pixels below the difference threshold");
  return fit_scale_shift(source, target, mask);
}

}  // namespace sharpdepth
