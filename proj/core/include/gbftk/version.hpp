#pragma once

namespace gbftk {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace gbftk
