#include "sharpdepth/distill.hpp"

#include <cmath>

#include "sharpdepth/errors.hpp"

namespace sharpdepth {

double NoiseSchedule::alpha_bar(int t) const {
  if (t < 0 || t > timesteps) throw NumericError("timestep out of range");
  return alpha_bars[static_cast<size_t>(t)];
}

NoiseSchedule make_schedule(int timesteps, double beta_min, double beta_max) {
  if (timesteps < 1) throw NumericError("schedule needs at least one timestep");
  if (!(beta_min > 0.0 && beta_min <= beta_max && beta_max < 1.0))
    throw NumericError("betas must satisfy 0 < beta_min <= beta_max < 1");

  NoiseSchedule s;
  s.timesteps = timesteps;
  s.betas.resize(static_cast<size_t>(timesteps));
  s.alpha_bars.resize(static_cast<size_t>(timesteps) + 1);
  s.alpha_bars[0] = 1.0;
  for (int i = 0; i < timesteps; ++i) {
    const double frac = timesteps == 1 ? 0.0 : static_cast<double>(i) / (timesteps - 1);
    s.betas[i] = beta_min + (beta_max - beta_min) * frac;
    s.alpha_bars[i + 1] = s.alpha_bars[i] * (1.0 - s.betas[i]);
  }
  return s;
}

TimestepWeighting TimestepWeighting::uniform(int timesteps, double value) {
  TimestepWeighting w;
  w.weights.assign(static_cast<size_t>(timesteps) + 1, value);
  return w;
}

LatentGrid q_sample(const LatentGrid& z, int t, const LatentGrid& eps, const NoiseSchedule& s) {
  if (!z.same_shape(eps)) throw DimensionMismatch("latent/noise shapes differ in q_sample");
  const double ab = s.alpha_bar(t);
  const double a = std::sqrt(ab);
  const double b = std::sqrt(1.0 - ab);
  LatentGrid out = z;
  for (size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = a * z.values[i] + b * eps.values[i];
  return out;
}

LatentGrid sds_gradient(const LatentGrid& z_hat, const LatentGrid& z_image, int t,
                        const LatentGrid& eps, const TeacherOracle& teacher,
                        const TimestepWeighting& w, const NoiseSchedule& s) {
  const LatentGrid noisy = q_sample(z_hat, t, eps, s);
  const LatentGrid denoised = teacher.denoise(noisy, z_image, t);
  if (!denoised.same_shape(z_hat)) throw DimensionMismatch("teacher output shape differs from input");
  const double wt = w.at(t);
  LatentGrid grad = z_hat;
  for (size_t i = 0; i < grad.values.size(); ++i)
    grad.values[i] = wt * (z_hat.values[i] - denoised.values[i]);
  return grad;
}

std::pair<double, Grid<double>> recon_loss_and_grad(const DepthMap& d_hat, const DepthMap& d,
                                                    const DifferenceMap& e, ReconNorm norm) {
  if (!d_hat.same_dims(d) || !d_hat.values.same_dims(e.values))
    throw DimensionMismatch("recon loss inputs have mismatched dims");

  int n = 0;
  for (size_t i = 0; i < d_hat.values.size(); ++i)
    if (d_hat.valid.data[i] && d.valid.data[i]) ++n;
  if (n == 0) throw EmptyMask("recon loss has no valid pixels");

  const double inv_n = 1.0 / static_cast<double>(n);
  double loss = 0.0;
  Grid<double> grad(d_hat.width(), d_hat.height());
  for (size_t i = 0; i < d_hat.values.size(); ++i) {
    if (!(d_hat.valid.data[i] && d.valid.data[i])) continue;
    const double ev = e.values.data[i];
    const double diff = d_hat.values.data[i] - d.values.data[i];
    if (norm == ReconNorm::kL1) {
      loss += ev * std::abs(diff);
      // subgradient 0 at exact kinks
      grad.data[i] = diff == 0.0 ? 0.0 : ev * (diff > 0.0 ? 1.0 : -1.0) * inv_n;
    } else {
      const double r = ev * diff;
      loss += r * r;
      grad.data[i] = 2.0 * ev * r * inv_n;
    }
  }
  return {loss * inv_n, std::move(grad)};
}

LatentGrid total_gradient(const LatentGrid& sds_grad, const LatentGrid& recon_grad,
                          const LossWeights& lw) {
  if (!sds_grad.same_shape(recon_grad)) throw DimensionMismatch("gradient shapes differ");
  LatentGrid out = sds_grad;
  for (size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = lw.lambda_sds * sds_grad.values[i] + lw.lambda_recons * recon_grad.values[i];
  return out;
}

LatentGrid pullback_gradient(const Grid<double>& depth_grad, int factor, int channels,
                             double denorm_slope) {
  LatentGrid g = encode_grid(depth_grad, factor, channels);
  for (double& v : g.values) v *= denorm_slope;
  return g;
}

EmaState ema_update(const EmaState& ema, const std::vector<double>& params) {
  if (ema.values.size() != params.size()) throw DimensionMismatch("EMA/parameter sizes differ");
  EmaState out = ema;
  for (size_t i = 0; i < params.size(); ++i)
    out.values[i] = ema.decay * ema.values[i] + (1.0 - ema.decay) * params[i];
  return out;
}

}  // namespace sharpdepth
