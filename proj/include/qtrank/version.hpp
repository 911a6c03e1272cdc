#pragma once

namespace qtrank {
inline constexpr const char* kVersion = "0.1.0";
}
