#pragma once

#include <cstdint>
#include <string>

namespace cryptonet {

// One OHLCV bar. `ts` is the bar open in UTC milliseconds and must sit on the
// bar grid (a multiple of the interval) wherever an interval is in play.
struct Candle {
    std::string symbol;
    std::string quote;
    std::int64_t ts = 0;
    double open = 0.0;
    double high = 0.0;
    double low = 0.0;
    double close = 0.0;
    double volume = 0.0;

    bool operator==(const Candle&) const = default;
};

// Throws ValidationError naming `row_label` when an invariant is broken.
// Checks prices > 0, volume >= 0, low <= open/close <= high, and grid
// alignment when interval_ms > 0.
void validate_candle(const Candle& c, std::int64_t interval_ms, const std::string& row_label);

enum class Side { Buy, Sell };

Side parse_side(const std::string& text);
const char* side_label(Side side);

// One taker-attributed trade; `side` is the aggressor's side.
struct TradeRecord {
    std::string symbol;
    std::string quote;
    std::int64_t ts = 0;
    double price = 0.0;
    double amount = 0.0;
    Side side = Side::Buy;

    bool operator==(const TradeRecord&) const = default;
};

void validate_trade(const TradeRecord& t, const std::string& row_label);

}  // namespace cryptonet
