#include "sharpdepth/depth_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "sharpdepth/errors.hpp"
#include "png_io.hpp"

namespace sharpdepth {

DepthFileFormat DepthFileFormat::parse(const std::string& token) {
  if (token == "pfm") return pfm();
  if (token.rfind("png16:", 0) == 0) {
    const double scale = std::stod(token.substr(6));
    if (scale <= 0.0) throw UnsupportedVariant("png16 scale must be positive: " + token);
    return png16(scale);
  }
  if (token.rfind("rawf32:", 0) == 0) {
    const size_t sep = token.find(':', 7);
    if (sep == std::string::npos) throw UnsupportedVariant("rawf32 needs dims: " + token);
    return rawf32(std::stoi(token.substr(7, sep - 7)), std::stoi(token.substr(sep + 1)));
  }
  throw UnsupportedVariant("unknown depth format token: " + token);
}

std::string DepthFileFormat::to_token() const {
  switch (variant) {
    case Variant::kPfm: return "pfm";
    case Variant::kPng16: {
      std::ostringstream os;
      os << "png16:" << png_scale;
      return os.str();
    }
    case Variant::kRawF32: {
      std::ostringstream os;
      os << "rawf32:" << raw_width << ":" << raw_height;
      return os.str();
    }
  }
  throw UnsupportedVariant("unknown depth format variant");
}

DepthFileFormat DepthFileFormat::from_extension(const std::string& path) {
  const size_t dot = path.find_last_of('.');
  const std::string ext = dot == std::string::npos ? "" : path.substr(dot);
  if (ext == ".pfm") return pfm();
  if (ext == ".png") return png16(1e-3);
  if (ext == ".raw" || ext == ".f32") return rawf32(0, 0);
  throw UnsupportedVariant("cannot infer depth format from path: " + path);
}

namespace {

bool host_is_little_endian() {
  const uint16_t probe = 1;
  uint8_t byte;
  std::memcpy(&byte, &probe, 1);
  return byte == 1;
}

void swap_f32(float& v) {
  uint32_t bits;
  std::memcpy(&bits, &v, 4);
  bits = __builtin_bswap32(bits);
  std::memcpy(&v, &bits, 4);
}

DepthMap read_pfm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);

  std::string magic;
  in >> magic;
  if (magic == "PF") throw UnsupportedVariant("3-channel PFM is not supported: " + path);
  if (magic != "Pf") throw MalformedHeader("not a PFM file: " + path);

  int width = 0, height = 0;
  double scale = 0.0;
  in >> width >> height >> scale;
  if (!in || width <= 0 || height <= 0 || scale == 0.0)
    throw MalformedHeader("bad PFM dims/scale in " + path);
  in.get();  // single whitespace after the scale line

  const bool file_little = scale < 0.0;
  std::vector<float> row(static_cast<size_t>(width));
  DepthMap map(width, height, DepthKind::kMetric);
  const bool need_swap = file_little != host_is_little_endian();
  for (int y = height - 1; y >= 0; --y) {  // PFM rows run bottom-up
    in.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(width) * 4);
    if (!in) throw TruncatedPayload("PFM payload ends early in " + path);
    for (int x = 0; x < width; ++x) {
      float v = row[x];
      if (need_swap) swap_f32(v);
      if (std::isfinite(v)) {
        map.values.at(x, y) = v;
      } else {
        map.values.at(x, y) = 0.0;
        map.valid.at(x, y) = 0;
      }
    }
  }
  return map;
}

void write_pfm(const DepthMap& map, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << "Pf\n" << map.width() << " " << map.height() << "\n-1.000000\n";
  std::vector<float> row(static_cast<size_t>(map.width()));
  const bool need_swap = !host_is_little_endian();
  for (int y = map.height() - 1; y >= 0; --y) {
    for (int x = 0; x < map.width(); ++x) {
      float v = map.valid.at(x, y) ? static_cast<float>(map.values.at(x, y))
                                   : std::numeric_limits<float>::quiet_NaN();
      if (need_swap) swap_f32(v);
      row[x] = v;
    }
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(map.width()) * 4);
  }
  if (!out) throw DataError("short write to " + path);
}

DepthMap read_rawf32(const std::string& path, int width, int height) {
  if (width <= 0 || height <= 0) throw UnsupportedVariant("rawf32 needs explicit dims");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::vector<float> buf(static_cast<size_t>(width) * height);
  in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()) * 4);
  if (!in) throw TruncatedPayload("raw float payload ends early in " + path);

  DepthMap map(width, height, DepthKind::kMetric);
  const bool need_swap = !host_is_little_endian();
  for (size_t i = 0; i < buf.size(); ++i) {
    float v = buf[i];
    if (need_swap) swap_f32(v);
    if (std::isnan(v)) {
      map.values.data[i] = 0.0;
      map.valid.data[i] = 0;
    } else {
      map.values.data[i] = v;
    }
  }
  return map;
}

void write_rawf32(const DepthMap& map, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  std::vector<float> buf(map.values.size());
  const bool need_swap = !host_is_little_endian();
  for (size_t i = 0; i < buf.size(); ++i) {
    float v = map.valid.data[i] ? static_cast<float>(map.values.data[i])
                                : std::numeric_limits<float>::quiet_NaN();
    if (need_swap) swap_f32(v);
    buf[i] = v;
  }
  out.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size()) * 4);
  if (!out) throw DataError("short write to " + path);
}

}  // namespace

DepthMap read_depth(const std::string& path, const DepthFileFormat& format) {
  switch (format.variant) {
    case DepthFileFormat::Variant::kPfm: return read_pfm(path);
    case DepthFileFormat::Variant::kPng16: return read_png16(path, format.png_scale);
    case DepthFileFormat::Variant::kRawF32:
      return read_rawf32(path, format.raw_width, format.raw_height);
  }
  throw UnsupportedVariant("unknown depth format variant");
}

WriteStats write_depth(const DepthMap& map, const std::string& path,
                       const DepthFileFormat& format) {
  switch (format.variant) {
    case DepthFileFormat::Variant::kPfm: write_pfm(map, path); return {};
    case DepthFileFormat::Variant::kPng16: return write_png16(map, path, format.png_scale);
    case DepthFileFormat::Variant::kRawF32: write_rawf32(map, path); return {};
  }
  throw UnsupportedVariant("unknown depth format variant");
}

void write_ply(const PointCloud& cloud, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << "ply\nformat ascii 1.0\n";
  out << "element vertex " << cloud.points.size() << "\n";
  out << "property float x\nproperty float y\nproperty float z\nend_header\n";
  char line[96];
  for (const Vec3& p : cloud.points) {
    std::snprintf(line, sizeof(line), "%.6f %.6f %.6f\n", p.x, p.y, p.z);
    out << line;
  }
  if (!out) throw DataError("short write to " + path);
}

}  // namespace sharpdepth
