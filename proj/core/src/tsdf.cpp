#include "sharpdepth/tsdf.hpp"

#include <algorithm>
#include <cmath>

#include "sharpdepth/errors.hpp"

namespace sharpdepth {

TsdfVolume::TsdfVolume(Vec3 origin_, double voxel_size_, int nx_, int ny_, int nz_,
                       double truncation_)
    : origin(origin_), voxel_size(voxel_size_), nx(nx_), ny(ny_), nz(nz_),
      truncation(truncation_),
      sdf(static_cast<size_t>(nx_) * ny_ * nz_, 1.0),
      weight(static_cast<size_t>(nx_) * ny_ * nz_, 0.0) {
  if (voxel_size_ <= 0.0 || truncation_ <= 0.0)
    throw NumericError("voxel size and truncation must be positive");
}

void tsdf_integrate(TsdfVolume& vol, const DepthMap& d, const CameraIntrinsics& k,
                    const Pose& pose) {
  pose.check();
  for (int kk = 0; kk < vol.nz; ++kk) {
    for (int jj = 0; jj < vol.ny; ++jj) {
      for (int ii = 0; ii < vol.nx; ++ii) {
        const Vec3 cam = pose.to_camera(vol.voxel_center(ii, jj, kk));
        if (cam.z <= 0.0) continue;
        const PixelCoord pix = project(cam, k);
        const int u = static_cast<int>(std::lround(pix.u));
        const int v = static_cast<int>(std::lround(pix.v));
        if (u < 0 || u >= d.width() || v < 0 || v >= d.height()) continue;
        if (!d.valid.at(u, v)) continue;
        const double depth = d.values.at(u, v);
        if (depth <= 0.0) continue;

        const double raw = (depth - cam.z) / vol.truncation;
        if (raw < -1.0) continue;  // beyond the back truncation band
        const double obs = std::min(raw, 1.0);

        const size_t idx = vol.index(ii, jj, kk);
        const double w = vol.weight[idx];
        vol.sdf[idx] = w > 0.0 ? (w * vol.sdf[idx] + obs) / (w + 1.0) : obs;
        vol.weight[idx] = w + 1.0;
      }
    }
  }
}

PointCloud tsdf_extract_points(const TsdfVolume& vol, double surface_band) {
  PointCloud cloud;
  for (int kk = 0; kk < vol.nz; ++kk) {
    for (int jj = 0; jj < vol.ny; ++jj) {
      for (int ii = 0; ii < vol.nx; ++ii) {
        const size_t idx = vol.index(ii, jj, kk);
        if (vol.weight[idx] <= 0.0) continue;
        if (std::abs(vol.sdf[idx]) >= surface_band) continue;
        cloud.points.push_back(vol.voxel_center(ii, jj, kk));
        cloud.attributes.push_back(vol.sdf[idx]);
      }
    }
  }
  return cloud;
}

}  // namespace sharpdepth
