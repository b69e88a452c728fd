#pragma once

#include "sharpdepth/depth_io.hpp"

namespace sharpdepth {

DepthMap read_png16(const std::string& path, double scale);
WriteStats write_png16(const DepthMap& map, const std::string& path, double scale);

}  // namespace sharpdepth
