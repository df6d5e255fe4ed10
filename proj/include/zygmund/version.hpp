#pragma once

namespace zygmund {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace zygmund
