#pragma once

#include <string>

#include "sharpdepth/camera.hpp"
#include "sharpdepth/depth_map.hpp"

namespace sharpdepth {

/// On-disk depth encodings.
///  - PFM: single-channel portable float map, float32, bottom-up rows,
///    negative scale marks little-endian. Non-finite samples are invalid.
///  - PNG16: 16-bit grayscale, meters = value * scale, 0 marks invalid.
///  - RAWF32: headerless row-major little-endian float32, NaN marks invalid;
///    dims must be supplied.
struct DepthFileFormat {
  enum class Variant { kPfm, kPng16, kRawF32 };

  Variant variant = Variant::kPfm;
  double png_scale = 1e-3;  // meters per PNG16 unit
  int raw_width = 0;
  int raw_height = 0;

  static DepthFileFormat pfm() { return {Variant::kPfm, 0.0, 0, 0}; }
  static DepthFileFormat png16(double scale) { return {Variant::kPng16, scale, 0, 0}; }
  static DepthFileFormat rawf32(int width, int height) {
    return {Variant::kRawF32, 0.0, width, height};
  }

  /// Parses a manifest/CLI token: "pfm", "png16:<scale>", "rawf32:<w>:<h>".
  static DepthFileFormat parse(const std::string& token);
  std::string to_token() const;

  /// Guesses the variant from a file extension (.pfm/.png/.raw|.f32).
  static DepthFileFormat from_extension(const std::string& path);
};

struct WriteStats {
  int clamped = 0;  // PNG16 samples that exceeded the representable range
};

DepthMap read_depth(const std::string& path, const DepthFileFormat& format);
WriteStats write_depth(const DepthMap& map, const std::string& path,
                       const DepthFileFormat& format);

/// ASCII PLY export ("ply" / "format ascii 1.0", float x,y,z vertex
/// properties).
void write_ply(const PointCloud& cloud, const std::string& path);

/// Binary edge image as an 8-bit PNG (0 background, 255 edges).
void write_edge_png(const Mask& edges, const std::string& path);

}  // namespace sharpdepth
