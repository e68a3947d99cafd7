#pragma once

namespace levyou {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace levyou
