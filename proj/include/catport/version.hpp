#pragma once

namespace catport {

inline constexpr const char* kVersion = "1.0.0";

} // namespace catport
