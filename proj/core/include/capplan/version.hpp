#pragma once

namespace capplan {

inline constexpr const char* kToolName = "capplan";
inline constexpr const char* kVersion = "1.0.0";

}  // namespace capplan
