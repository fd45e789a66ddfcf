#pragma once

namespace quatern {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace quatern
