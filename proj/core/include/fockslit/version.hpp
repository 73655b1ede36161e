#pragma once

namespace fockslit {

inline constexpr const char* version = "1.0.0";

}  // namespace fockslit
