#include "sharpdepth/refine.hpp"

#include <cmath>

#include "sharpdepth/errors.hpp"

namespace sharpdepth {

namespace {

LatentGrid encode_normalized_target(const DepthMap& target, int factor, int channels) {
  auto [norm, rec] = minmax_normalize(target);
  return encode_latent(norm, factor, channels);
}

// SDS pull restricted to the gated sites. Where no noise was blended in the
// latent is authoritative and the distillation term must not move it.
LatentGrid gate_modulate(const LatentGrid& grad, const GateMap& gate) {
  LatentGrid out = grad;
  for (int c = 0; c < out.channels; ++c)
    for (int y = 0; y < out.height; ++y)
      for (int x = 0; x < out.width; ++x) out.at(c, x, y) *= gate.values.at(x, y);
  return out;
}

double gated_sds_objective(const LatentGrid& z, const LatentGrid& target, const GateMap& gate,
                           double wt) {
  double acc = 0.0;
  for (int c = 0; c < z.channels; ++c)
    for (int y = 0; y < z.height; ++y)
      for (int x = 0; x < z.width; ++x) {
        const double d = z.at(c, x, y) - target.at(c, x, y);
        acc += gate.values.at(x, y) * d * d;
      }
  return 0.5 * wt * acc;
}

}  // namespace

std::unique_ptr<TeacherOracle> make_oracle_teacher(const SyntheticScene& scene, int latent_factor,
                                                   int latent_channels) {
  return std::make_unique<ConstantTargetTeacher>(
      encode_normalized_target(scene.teacher_target, latent_factor, latent_channels));
}

RefineResult refine(const SyntheticScene& scene, const RefineConfig& config,
                    const DifferenceMap* forced_difference) {
  if (config.steps < 0 || config.rounds < 1) throw NumericError("invalid refine config");
  const int width = scene.metric_input.width();
  const int height = scene.metric_input.height();

  const NoiseSchedule schedule = make_schedule(config.timesteps, config.beta_min, config.beta_max);
  const TimestepWeighting weighting = TimestepWeighting::uniform(config.timesteps);
  Rng rng(config.seed * 0x9e3779b97f4a7c15ULL + 1);

  RefineResult result;
  DepthMap reference = scene.teacher_target;

  for (int round = 0; round < config.rounds; ++round) {
    DifferenceMap e;
    if (forced_difference) {
      e = *forced_difference;
    } else {
      // Two-stage alignment: the global fit is diluted by exactly the
      // disagreeing regions the map is meant to expose, so refit on the
      // low-difference pixels before computing the final map.
      e = difference_map(reference, scene.metric_input, config.difference);
      try {
        const AffineTransform refit =
            masked_fit_scale_shift(reference, scene.metric_input, e, config.tau);
        e = difference_map(reference, scene.metric_input, refit, config.difference);
      } catch (const Error&) {
        // keep the single-pass map when too few pixels agree
      }
    }

    auto [input_norm, rec] = minmax_normalize(scene.metric_input);
    const LatentGrid z_input =
        encode_latent(input_norm, config.latent_factor, config.latent_channels);
    const GateMap gate = downsample_gate(e, z_input.width, z_input.height);
    const LatentGrid noise = gaussian_latent(z_input.width, z_input.height, z_input.channels,
                                             config.latent_factor, rng);
    LatentGrid z = blend(z_input, noise, gate);

    // The teacher is the sharp reference of this round: the scene's own
    // target first, then the previous refined output.
    const ConstantTargetTeacher teacher(
        encode_normalized_target(reference, config.latent_factor, config.latent_channels));
    const double denorm_slope = (rec.max_value - rec.min_value) / 2.0;

    for (int step = 0; step < config.steps; ++step) {
      const int t = rng.uniform_int(1, config.timesteps);
      const LatentGrid eps = gaussian_latent(z.width, z.height, z.channels, config.latent_factor,
                                             rng);
      const LatentGrid sds =
          gate_modulate(sds_gradient(z, scene.image, t, eps, teacher, weighting, schedule), gate);

      DepthMap decoded = crop(decode_latent(z), width, height);
      DepthMap d_hat = denormalize(decoded, rec);
      d_hat.valid = scene.metric_input.valid;
      auto [recon_loss, recon_grad_depth] =
          recon_loss_and_grad(d_hat, scene.metric_input, e, config.recon_norm);
      const LatentGrid recon = pullback_gradient(recon_grad_depth, config.latent_factor,
                                                 config.latent_channels, denorm_slope);

      const LatentGrid grad = total_gradient(sds, recon, config.loss_weights);
      const LatentGrid target = teacher.denoise(z, scene.image, t);
      const double loss = config.loss_weights.lambda_sds *
                              gated_sds_objective(z, target, gate, weighting.at(t)) +
                          config.loss_weights.lambda_recons * recon_loss;
      if (!std::isfinite(loss)) throw NonFinite("refinement loss diverged");
      result.loss_trace.push_back(loss);

      for (size_t i = 0; i < z.values.size(); ++i)
        z.values[i] -= config.learning_rate * grad.values[i];
    }

    DepthMap refined = denormalize(crop(decode_latent(z), width, height), rec);
    refined.valid = scene.metric_input.valid;

    AffineTransform realign{1.0, 0.0};
    if (config.realign) {
      realign = masked_fit_scale_shift(refined, scene.metric_input, e, config.tau);
      refined = apply_affine(refined, realign);
    }

    result.round_differences.push_back(e);
    result.round_alignments.push_back(realign);
    result.refined = refined;
    reference = refined;
  }
  return result;
}

}  // namespace sharpdepth
