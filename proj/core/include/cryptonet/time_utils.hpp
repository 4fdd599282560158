#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace cryptonet {

inline constexpr std::int64_t kMsPerMinute = 60'000;
inline constexpr std::int64_t kMsPerHour = 3'600'000;
inline constexpr std::int64_t kMsPerDay = 86'400'000;

// Parses a UTC instant into milliseconds since the Unix epoch. Accepts
// "YYYY-MM-DD", "YYYY-MM-DD HH:MM", "YYYY-MM-DDTHH:MM[:SS]" (optional
// trailing 'Z'), or a raw integer millisecond count.
std::int64_t parse_utc_ms(std::string_view text);

// "YYYY-MM-DDTHH:MM:SSZ" for log and report output.
std::string format_utc_ms(std::int64_t ms);

// Maps "1m"/"1h"/"1d" or "<n>ms" to a bar width in milliseconds.
std::int64_t parse_interval(std::string_view text);
std::string interval_label(std::int64_t interval_ms);

}  // namespace cryptonet
