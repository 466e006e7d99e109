#pragma once

namespace rainbow {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rainbow
