#pragma once

namespace maxplus {

inline constexpr const char* version = "0.1.0";

}  // namespace maxplus
