#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cryptonet/candle.hpp"

namespace cryptonet {

// Candle CSV schema: symbol,quote,ts,open,high,low,close,volume
// Trade CSV schema:  symbol,quote,ts,price,amount,side
//
// Stores are plain CSV files. Persisting merges with the existing file,
// deduplicates on (symbol, quote, ts) with the later record winning, sorts by
// (symbol, quote, ts), and rewrites atomically — so re-persisting the same
// batch leaves the store byte-identical.

inline constexpr const char* kCandleCsvHeader = "symbol,quote,ts,open,high,low,close,volume";
inline constexpr const char* kTradeCsvHeader = "symbol,quote,ts,price,amount,side";

// Returns the row count of the store after the merge. Validates the batch
// first; a broken invariant raises ValidationError naming the batch row.
std::size_t persist_candles(const std::vector<Candle>& candles,
                            const std::filesystem::path& store_path);

std::vector<Candle> load_candles(const std::filesystem::path& store_path);

// Trades carry no venue id, so dedup collapses exact duplicate rows only.
std::size_t persist_trades(const std::vector<TradeRecord>& trades,
                           const std::filesystem::path& store_path);

std::vector<TradeRecord> load_trades(const std::filesystem::path& store_path);

// Directory layout used by the CLI: one candle file per (symbol, quote,
// interval) and one trade file per (symbol, quote).
class CandleStore {
public:
    explicit CandleStore(std::filesystem::path root) : root_(std::move(root)) {}

    const std::filesystem::path& root() const { return root_; }

    std::filesystem::path candle_path(const std::string& symbol, const std::string& quote,
                                      std::int64_t interval_ms) const;
    std::filesystem::path trade_path(const std::string& symbol, const std::string& quote) const;

private:
    std::filesystem::path root_;
};

}  // namespace cryptonet
