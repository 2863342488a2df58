#pragma once

namespace ob {

inline constexpr const char* kToolName = "obkit";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace ob
