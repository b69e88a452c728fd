#pragma once

#include <string>

#include "sharpdepth/metrics.hpp"
#include "sharpdepth/refine.hpp"

namespace sharpdepth {

/// Every tunable of the toolkit with its default, loadable from a JSON
/// config file and echoable back so a run can be reproduced exactly.
struct ToolConfig {
  RefineConfig refine;
  CannyConfig canny;
  double dbe_truncation = 10.0;

  double tsdf_voxel_size = 0.02;
  double tsdf_truncation = 0.1;
  double tsdf_surface_band = 0.2;

  int threads = 1;
  uint64_t seed = 0;

  /// Parses the JSON text, overriding only the keys present.
  void apply_json(const std::string& text);
  void load(const std::string& path);

  /// Full effective configuration as pretty JSON (stable key order).
  std::string to_json() const;
};

}  // namespace sharpdepth
