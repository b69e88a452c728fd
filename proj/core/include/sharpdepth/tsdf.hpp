#pragma once

#include "sharpdepth/camera.hpp"

namespace sharpdepth {

/// Voxel grid of truncation-normalized signed distances in [-1, 1] with
/// per-voxel integration weights. Uninitialized voxels (weight 0) carry
/// sdf = 1.
struct TsdfVolume {
  Vec3 origin;               // world position of the (0,0,0) voxel corner
  double voxel_size = 0.02;  // meters
  int nx = 0, ny = 0, nz = 0;
  double truncation = 0.1;  // meters
  std::vector<double> sdf;
  std::vector<double> weight;

  TsdfVolume() = default;
  TsdfVolume(Vec3 origin_, double voxel_size_, int nx_, int ny_, int nz_, double truncation_);

  size_t index(int i, int j, int k) const {
    return (static_cast<size_t>(k) * ny + j) * nx + i;
  }
  Vec3 voxel_center(int i, int j, int k) const {
    return origin + Vec3{(i + 0.5) * voxel_size, (j + 0.5) * voxel_size, (k + 0.5) * voxel_size};
  }
};

/// Integrates one depth frame: each voxel center is transformed to the
/// camera frame and projected; where the projection lands on a valid depth
/// sample, sdf_obs = clamp((depth - z_cam)/truncation, -1, 1) is averaged in
/// with weight 1. Voxels more than one truncation band behind the observed
/// surface are left untouched.
void tsdf_integrate(TsdfVolume& vol, const DepthMap& d, const CameraIntrinsics& k,
                    const Pose& pose);

/// Centers of observed voxels whose |sdf| is below surface_band, with the
/// sdf value as the point attribute.
PointCloud tsdf_extract_points(const TsdfVolume& vol, double surface_band = 0.2);

}  // namespace sharpdepth
