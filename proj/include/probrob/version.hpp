#pragma once

namespace probrob {

inline constexpr const char* kToolName = "probrob";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace probrob
