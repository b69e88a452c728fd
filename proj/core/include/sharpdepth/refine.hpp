#pragma once

#include <memory>

#include "sharpdepth/alignment.hpp"
#include "sharpdepth/distill.hpp"
#include "sharpdepth/scene.hpp"

namespace sharpdepth {

/// Knobs for the end-to-end refinement loop.
struct RefineConfig {
  int steps = 300;
  double learning_rate = 0.05;  // latent units per step
  LossWeights loss_weights;
  int rounds = 2;

  int timesteps = 1000;
  double beta_min = 1e-4;
  double beta_max = 2e-2;

  int latent_factor = 4;
  int latent_channels = 4;
  DifferenceOptions difference;
  double tau = 0.2;  // masked re-alignment threshold

  ReconNorm recon_norm = ReconNorm::kL1;
  bool realign = true;  // final masked least-squares re-alignment stage
  uint64_t seed = 0;
};

struct RefineResult {
  DepthMap refined;  // metric, valid wherever the input is valid
  std::vector<DifferenceMap> round_differences;
  std::vector<AffineTransform> round_alignments;  // identity entries when realign is off
  std::vector<double> loss_trace;                 // one scalar per optimization step
};

/// Denoiser that always predicts one fixed clean latent, ignoring the noisy
/// input, the conditioning, and the timestep: an idealized predictor whose
/// knowledge is sharp but scale/shift-ambiguous.
class ConstantTargetTeacher final : public TeacherOracle {
 public:
  explicit ConstantTargetTeacher(LatentGrid prediction) : prediction_(std::move(prediction)) {}
  LatentGrid denoise(const LatentGrid&, const LatentGrid&, int) const override {
    return prediction_;
  }

 private:
  LatentGrid prediction_;
};

/// Teacher that predicts the encoded, min-max-normalized sharp target of the
/// scene, whatever the noisy input.
std::unique_ptr<TeacherOracle> make_oracle_teacher(const SyntheticScene& scene,
                                                   int latent_factor = 4, int latent_channels = 4);

/// Multi-round gated refinement: per round, compute the difference map
/// against the current sharp reference (first the teacher target, then the
/// previous round's output), blend noise into the encoded input where the
/// maps disagree, descend the combined distillation/reconstruction objective
/// on the latent, decode, and re-align to the input on low-difference pixels.
///
/// `forced_difference`, when given, replaces the computed difference map in
/// every round (diagnostic hook for anchoring experiments).
RefineResult refine(const SyntheticScene& scene, const RefineConfig& config,
                    const DifferenceMap* forced_difference = nullptr);

}  // namespace sharpdepth
