#pragma once

#include <string>
#include <vector>

#include "sharpdepth/camera.hpp"
#include "sharpdepth/depth_io.hpp"

namespace sharpdepth {

/// One line of an eval manifest:
///   <pred_path> <pred_format> <gt_path> <gt_format>
struct EvalRecord {
  std::string pred_path;
  DepthFileFormat pred_format;
  std::string gt_path;
  DepthFileFormat gt_format;
};

/// One line of a fuse manifest:
///   <depth_path> <format> fx fy cx cy [12 pose numbers, row-major 3x4]
struct FuseRecord {
  std::string depth_path;
  DepthFileFormat format;
  CameraIntrinsics intrinsics;
  Pose pose;  // identity when the line omits it
};

/// Blank lines and lines starting with '#' are skipped.
std::vector<EvalRecord> read_eval_manifest(const std::string& path);
std::vector<FuseRecord> read_fuse_manifest(const std::string& path);

}  // namespace sharpdepth
