#pragma once

namespace euler_entropy {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace euler_entropy
