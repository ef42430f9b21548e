#pragma once

namespace nonleaf {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace nonleaf
