#include "cryptonet/candle.hpp"

#include <cmath>

#include <fmt/format.h>

#include "cryptonet/errors.hpp"

namespace cryptonet {

void validate_candle(const Candle& c, std::int64_t interval_ms, const std::string& row_label) {
    const auto fail = [&](const std::string& why) {
        throw ValidationError(fmt::format("{}: {} ({} {} ts={})", row_label, why, c.symbol,
                                          c.quote, c.ts));
    };
    if (c.symbol.empty() || c.quote.empty()) fail("symbol and quote must be non-empty");
    if (!(c.open > 0.0 && c.high > 0.0 && c.low > 0.0 && c.close > 0.0)) {
        fail("prices must be strictly positive");
    }
    if (!std::isfinite(c.open) || !std::isfinite(c.high) || !std::isfinite(c.low) ||
        !std::isfinite(c.close) || !std::isfinite(c.volume)) {
        fail("non-finite field");
    }
    if (c.volume < 0.0) fail("volume must be non-negative");
    if (c.low > c.open || c.open > c.high || c.low > c.close || c.close > c.high) {
        fail("requires low <= open,close <= high");
    }
    if (interval_ms > 0 && c.ts % interval_ms != 0) {
        fail(fmt::format("ts not aligned to {} ms bars", interval_ms));
    }
}

Side parse_side(const std::string& text) {
    if (text == "BUY") return Side::Buy;
    if (text == "SELL") return Side::Sell;
    throw SchemaError(fmt::format("side must be BUY or SELL, got '{}'", text));
}

const char* side_label(Side side) {
    return side == Side::Buy ? "BUY" : "SELL";
}

void validate_trade(const TradeRecord& t, const std::string& row_label) {
    const auto fail = [&](const std::string& why) {
        throw ValidationError(fmt::format("{}: {} ({} {} ts={})", row_label, why, t.symbol,
                                          t.quote, t.ts));
    };
    if (t.symbol.empty() || t.quote.empty()) fail("symbol and quote must be non-empty");
    if (!std::isfinite(t.price) || !std::isfinite(t.amount)) fail("non-finite field");
    if (t.price <= 0.0) fail("price must be > 0");
    if (t.amount <= 0.0) fail("amount must be > 0");
}

}  // namespace cryptonet
