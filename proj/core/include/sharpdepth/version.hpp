#pragma once

namespace sharpdepth {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace sharpdepth
