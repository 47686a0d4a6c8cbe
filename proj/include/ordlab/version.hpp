#pragma once

namespace ordlab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ordlab
