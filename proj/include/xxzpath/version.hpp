#pragma once

namespace xxz {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace xxz
