#include "sharpdepth/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sharpdepth/errors.hpp"

namespace sharpdepth {

namespace {

using Json = nlohmann::ordered_json;

template <typename T>
void maybe(const Json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

void ToolConfig::apply_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw DataError(std::string("config is not valid JSON: ") + e.what());
  }

  if (j.contains("refine")) {
    const Json& r = j.at("refine");
    maybe(r, "steps", refine.steps);
    maybe(r, "learning_rate", refine.learning_rate);
    maybe(r, "rounds", refine.rounds);
    maybe(r, "lambda_sds", refine.loss_weights.lambda_sds);
    maybe(r, "lambda_recons", refine.loss_weights.lambda_recons);
    maybe(r, "timesteps", refine.timesteps);
    maybe(r, "beta_min", refine.beta_min);
    maybe(r, "beta_max", refine.beta_max);
    maybe(r, "latent_factor", refine.latent_factor);
    maybe(r, "latent_channels", refine.latent_channels);
    maybe(r, "difference_quantile", refine.difference.quantile);
    maybe(r, "difference_eps", refine.difference.eps);
    maybe(r, "tau", refine.tau);
    maybe(r, "realign", refine.realign);
    if (r.contains("recon_norm")) {
      const std::string norm = r.at("recon_norm").get<std::string>();
      if (norm == "l1") refine.recon_norm = ReconNorm::kL1;
      else if (norm == "l2") refine.recon_norm = ReconNorm::kL2;
      else throw DataError("recon_norm must be l1 or l2");
    }
  }
  if (j.contains("canny")) {
    const Json& c = j.at("canny");
    maybe(c, "sigma", canny.gaussian_sigma);
    maybe(c, "low", canny.low_threshold);
    maybe(c, "high", canny.high_threshold);
    maybe(c, "normalize_input", canny.normalize_input);
  }
  if (j.contains("boundary")) maybe(j.at("boundary"), "truncation", dbe_truncation);
  if (j.contains("tsdf")) {
    const Json& t = j.at("tsdf");
    maybe(t, "voxel_size", tsdf_voxel_size);
    maybe(t, "truncation", tsdf_truncation);
    maybe(t, "surface_band", tsdf_surface_band);
  }
  maybe(j, "threads", threads);
  maybe(j, "seed", seed);
  refine.seed = seed;
}

void ToolConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  apply_json(text.str());
}

std::string ToolConfig::to_json() const {
  Json j;
  j["refine"] = {
      {"steps", refine.steps},
      {"learning_rate", refine.learning_rate},
      {"rounds", refine.rounds},
      {"lambda_sds", refine.loss_weights.lambda_sds},
      {"lambda_recons", refine.loss_weights.lambda_recons},
      {"timesteps", refine.timesteps},
      {"beta_min", refine.beta_min},
      {"beta_max", refine.beta_max},
      {"latent_factor", refine.latent_factor},
      {"latent_channels", refine.latent_channels},
      {"difference_quantile", refine.difference.quantile},
      {"difference_eps", refine.difference.eps},
      {"tau", refine.tau},
      {"realign", refine.realign},
      {"recon_norm", refine.recon_norm == ReconNorm::kL1 ? "l1" : "l2"},
  };
  j["canny"] = {
      {"sigma", canny.gaussian_sigma},
      {"low", canny.low_threshold},
      {"high", canny.high_threshold},
      {"normalize_input", canny.normalize_input},
  };
  j["boundary"] = {{"truncation", dbe_truncation}};
  j["tsdf"] = {
      {"voxel_size", tsdf_voxel_size},
      {"truncation", tsdf_truncation},
      {"surface_band", tsdf_surface_band},
  };
  j["threads"] = threads;
  j["seed"] = seed;
  return j.dump(2) + "\n";
}

}  // namespace sharpdepth
