#pragma once

namespace skr {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace skr
