#pragma once

namespace pairfluid {

inline constexpr const char* kVersion = "0.1.0";

} // namespace pairfluid
