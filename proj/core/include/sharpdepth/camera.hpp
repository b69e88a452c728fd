#pragma once

#include <array>
#include <optional>

#include "sharpdepth/depth_map.hpp"

namespace sharpdepth {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
};

/// Pinhole intrinsics in pixels.
struct CameraIntrinsics {
  double fx = 1.0, fy = 1.0;
  double cx = 0.0, cy = 0.0;
};

/// Rigid camera-to-world transform: x_world = rotation * x_cam + translation.
struct Pose {
  std::array<double, 9> rotation = {1, 0, 0, 0, 1, 0, 0, 0, 1};  // row-major
  Vec3 translation;

  Vec3 to_world(const Vec3& cam) const;
  Vec3 to_camera(const Vec3& world) const;

  /// Throws unless rotation is orthonormal with determinant +1 (1e-9).
  void check() const;
};

struct PointCloud {
  std::vector<Vec3> points;
  std::vector<double> attributes;  // empty or one scalar per point

  size_t size() const { return points.size(); }
};

struct PixelCoord {
  double u = 0.0, v = 0.0, z = 0.0;
};

/// Back-projects every masked valid pixel through the pinhole model:
/// X = (u - cx) z / fx, Y = (v - cy) z / fy, Z = z.
PointCloud unproject(const DepthMap& d, const CameraIntrinsics& k, const Mask& mask);
PointCloud unproject(const DepthMap& d, const CameraIntrinsics& k);

/// Forward projection; throws BehindCamera when Z <= 0.
PixelCoord project(const Vec3& p, const CameraIntrinsics& k);

}  // namespace sharpdepth
