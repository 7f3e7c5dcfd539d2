#pragma once

namespace bavt {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace bavt
