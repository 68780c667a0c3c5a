#pragma once

namespace survivordim {

inline constexpr const char* kToolName = "survivordim";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace survivordim
