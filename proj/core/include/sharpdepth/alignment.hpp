#pragma once

#include "sharpdepth/depth_map.hpp"

namespace sharpdepth {

/// Controls how raw absolute differences are squashed into [0, 1].
/// The divisor is the given quantile of the valid residuals plus eps;
/// quantile 1.0 reproduces plain max-normalization.
struct DifferenceOptions {
  double quantile = 0.95;
  double eps = 1e-8;
};

/// Maps valid pixels to [-1, 1] via 2*(d - min)/(max - min) - 1 and records
/// (min, max). Invalid pixels map to 0. Throws DegenerateRange when all valid
/// values are equal.
std::pair<DepthMap, NormalizationRecord> minmax_normalize(const DepthMap& d);

/// Inverse of minmax_normalize: (n + 1)/2 * (max - min) + min.
DepthMap denormalize(const DepthMap& n, const NormalizationRecord& rec);

/// Least-squares (s, t) minimizing sum over the mask of
/// (s * source + t - target)^2, solved through the closed-form 2x2 normal
/// equations. Pixels enter only where mask and both validity grids agree.
/// Throws EmptyMask (< 2 usable pixels) or SingularSystem (constant source).
AffineTransform fit_scale_shift(const DepthMap& source, const DepthMap& target, const Mask& mask);

/// fit_scale_shift over the intersection of the two validity grids.
AffineTransform fit_scale_shift(const DepthMap& source, const DepthMap& target);

/// scale * values + shift on valid pixels. An affine-invariant input becomes
/// metric (it has been mapped onto a metric target's range); other kinds are
/// preserved.
DepthMap apply_affine(const DepthMap& m, const AffineTransform& a);

/// Sum of squared residuals of (s, t) over the usable mask pixels.
double alignment_residual(const DepthMap& source, const DepthMap& target, const Mask& mask,
                          const AffineTransform& a);

/// Aligns d_rel onto d_metric with fit_scale_shift, takes the absolute
/// difference, and normalizes it to [0, 1] (quantile rule in opts). Pixels
/// invalid in either input get value 1 and valid = false.
DifferenceMap difference_map(const DepthMap& d_rel, const DepthMap& d_metric,
                             const DifferenceOptions& opts = {});

/// Same residual/normalization path for a caller-supplied transform.
DifferenceMap difference_map(const DepthMap& d_rel, const DepthMap& d_metric,
                             const AffineTransform& fit, const DifferenceOptions& opts = {});

/// fit_scale_shift restricted to pixels where e < tau. Throws EmptyMask when
/// fewer than two pixels survive the threshold.
AffineTransform masked_fit_scale_shift(const DepthMap& source, const DepthMap& target,
                                       const DifferenceMap& e, double tau);

/// Linear-interpolation quantile (q in [0, 1]) of an unsorted sample.
double quantile(std::vector<double> values, double q);

}  // namespace sharpdepth
