#pragma once

namespace tcsm {
inline constexpr const char* kToolName = "tcsm";
inline constexpr const char* kToolVersion = "0.1.0";
}  // namespace tcsm
