#pragma once

#include <utility>

#include "sharpdepth/latent.hpp"

namespace sharpdepth {

/// Forward-noising schedule: per-step variance increments and their
/// cumulative products. alpha_bars has T+1 entries with alpha_bars[0] = 1.
struct NoiseSchedule {
  int timesteps = 0;
  std::vector<double> betas;       // size T, index t-1 holds beta_t
  std::vector<double> alpha_bars;  // size T+1, strictly decreasing from 1

  double alpha_bar(int t) const;
};

/// Linear beta schedule from beta_min to beta_max over T steps.
NoiseSchedule make_schedule(int timesteps, double beta_min, double beta_max);

/// Per-timestep weights for the distillation gradient; defaults to 1.
struct TimestepWeighting {
  std::vector<double> weights;  // size T+1, indexed by t

  static TimestepWeighting uniform(int timesteps, double value = 1.0);
  double at(int t) const { return weights.at(static_cast<size_t>(t)); }
};

/// z^t = sqrt(alpha_bar_t) * z + sqrt(1 - alpha_bar_t) * eps.
LatentGrid q_sample(const LatentGrid& z, int t, const LatentGrid& eps, const NoiseSchedule& s);

/// Denoiser contract: predicts the clean latent from a noisy one plus the
/// image conditioning. Implementations must be deterministic in their inputs.
class TeacherOracle {
 public:
  virtual ~TeacherOracle() = default;
  virtual LatentGrid denoise(const LatentGrid& z_noisy, const LatentGrid& z_image, int t) const = 0;
};

/// One Monte-Carlo sample of the distillation gradient:
/// w_t * (z_hat - teacher(q_sample(z_hat, t, eps), z_image, t)).
/// The teacher's prediction is treated as a constant (no Jacobian term).
LatentGrid sds_gradient(const LatentGrid& z_hat, const LatentGrid& z_image, int t,
                        const LatentGrid& eps, const TeacherOracle& teacher,
                        const TimestepWeighting& w, const NoiseSchedule& s);

enum class ReconNorm { kL1, kL2 };

/// Difference-weighted reconstruction loss between the refined and the input
/// depth. L1 (default): mean over valid pixels of e * |d_hat - d| with
/// gradient e * sign(d_hat - d) / N. L2: mean of (e * (d_hat - d))^2 with the
/// matching gradient. Throws EmptyMask when no pixel is valid in both maps.
std::pair<double, Grid<double>> recon_loss_and_grad(const DepthMap& d_hat, const DepthMap& d,
                                                    const DifferenceMap& e,
                                                    ReconNorm norm = ReconNorm::kL1);

/// Combination weights for the two objectives.
struct LossWeights {
  double lambda_sds = 1.0;
  double lambda_recons = 0.3;
};

/// lambda_sds * sds_grad + lambda_recons * recon_grad, elementwise.
LatentGrid total_gradient(const LatentGrid& sds_grad, const LatentGrid& recon_grad,
                          const LossWeights& lw);

/// Pulls a depth-space gradient back to latent space: area-average pooling
/// (the decode upsample is linear) replicated across channels, scaled by
/// d(depth)/d(normalized) so the chain through denormalization is complete.
LatentGrid pullback_gradient(const Grid<double>& depth_grad, int factor, int channels,
                             double denorm_slope);

/// Exponential moving average of a flat parameter vector.
struct EmaState {
  std::vector<double> values;
  double decay = 0.999;
};

/// ema <- decay * ema + (1 - decay) * params.
EmaState ema_update(const EmaState& ema, const std::vector<double>& params);

}  // namespace sharpdepth
