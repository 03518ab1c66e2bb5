#pragma once

namespace qkd {

inline constexpr const char* kToolName = "qkdlink";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace qkd
