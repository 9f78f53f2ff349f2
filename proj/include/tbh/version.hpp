#pragma once

namespace tbh {
inline constexpr const char* version = "0.1.0";
}
