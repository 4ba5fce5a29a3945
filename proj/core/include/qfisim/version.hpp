#pragma once

namespace qfisim {
inline constexpr const char* kVersion = "0.1.0";
}
