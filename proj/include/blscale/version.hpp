#pragma once

namespace blscale {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace blscale
