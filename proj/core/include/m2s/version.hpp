#pragma once

namespace m2s {

inline constexpr const char* kCodeVersion = "m2sbench 0.1.0";

}  // namespace m2s
