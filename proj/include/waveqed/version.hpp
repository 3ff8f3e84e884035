#pragma once

namespace waveqed {

inline constexpr const char* kToolName = "waveqed";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace waveqed
