#pragma once

namespace ttlab {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace ttlab
