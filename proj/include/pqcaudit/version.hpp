#pragma once

namespace pqcaudit {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace pqcaudit
