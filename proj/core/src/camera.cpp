#include "sharpdepth/camera.hpp"

#include <cmath>

#include "sharpdepth/errors.hpp"

namespace sharpdepth {

Vec3 Pose::to_world(const Vec3& c) const {
  const auto& r = rotation;
  return Vec3{r[0] * c.x + r[1] * c.y + r[2] * c.z, r[3] * c.x + r[4] * c.y + r[5] * c.z,
              r[6] * c.x + r[7] * c.y + r[8] * c.z} +
         translation;
}

Vec3 Pose::to_camera(const Vec3& w) const {
  const Vec3 d = w - translation;
  const auto& r = rotation;  // inverse of a rotation is its transpose
  return {r[0] * d.x + r[3] * d.y + r[6] * d.z, r[1] * d.x + r[4] * d.y + r[7] * d.z,
          r[2] * d.x + r[5] * d.y + r[8] * d.z};
}

void Pose::check() const {
  const auto& r = rotation;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double dot = 0.0;
      for (int k = 0; k < 3; ++k) dot += r[3 * k + i] * r[3 * k + j];
      const double expect = i == j ? 1.0 : 0.0;
      if (std::abs(dot - expect) > 1e-9) throw NumericError("pose rotation is not orthonormal");
    }
  }
  const double det = r[0] * (r[4] * r[8] - r[5] * r[7]) - r[1] * (r[3] * r[8] - r[5] * r[6]) +
                     r[2] * (r[3] * r[7] - r[4] * r[6]);
  if (std::abs(det - 1.0) > 1e-9) throw NumericError("pose rotation determinant is not +1");
}

PointCloud unproject(const DepthMap& d, const CameraIntrinsics& k, const Mask& mask) {
  if (!d.values.same_dims(mask)) throw DimensionMismatch("unproject mask dims differ");
  PointCloud cloud;
  for (int y = 0; y < d.height(); ++y) {
    for (int x = 0; x < d.width(); ++x) {
      if (!mask.at(x, y) || !d.valid.at(x, y)) continue;
      const double z = d.values.at(x, y);
      if (z <= 0.0) throw NonPositiveDepth("unproject needs positive depth");
      cloud.points.push_back({(x - k.cx) * z / k.fx, (y - k.cy) * z / k.fy, z});
    }
  }
  return cloud;
}

PointCloud unproject(const DepthMap& d, const CameraIntrinsics& k) {
  Mask all(d.width(), d.height(), 1);
  return unproject(d, k, all);
}

PixelCoord project(const Vec3& p, const CameraIntrinsics& k) {
  if (p.z <= 0.0) throw BehindCamera("point is at or behind the camera plane");
  return {k.fx * p.x / p.z + k.cx, k.fy * p.y / p.z + k.cy, p.z};
}

}  // namespace sharpdepth
