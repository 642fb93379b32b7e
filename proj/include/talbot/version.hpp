#pragma once

namespace talbot {

inline constexpr const char* k_tool_name = "talbot";
inline constexpr const char* k_tool_version = "1.0.0";

} // namespace talbot
