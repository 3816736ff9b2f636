#pragma once

namespace qfisher {
inline constexpr const char* kVersion = "0.1.0";
}
