#pragma once

namespace gmap {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gmap
