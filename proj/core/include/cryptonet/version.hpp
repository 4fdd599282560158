#pragma once

namespace cryptonet {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cryptonet
