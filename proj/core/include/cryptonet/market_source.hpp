#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cryptonet/candle.hpp"

namespace cryptonet {

struct TimeRange {
    std::int64_t start = 0;  // inclusive, ms
    std::int64_t end = 0;    // exclusive, ms
};

// One page of results plus the cursor for the next page (empty = done).
template <typename T>
struct Page {
    std::vector<T> items;
    std::optional<std::string> next_cursor;
};

// A candle/trade source. Implementations: ArchiveSource over a local store
// directory, RemoteSource over GET endpoints with cursor pagination.
class MarketSource {
public:
    virtual ~MarketSource() = default;

    virtual Page<Candle> candle_page(const std::string& symbol, const std::string& quote,
                                     std::int64_t interval_ms, TimeRange range,
                                     const std::optional<std::string>& cursor) = 0;

    virtual Page<TradeRecord> trade_page(const std::string& symbol, const std::string& quote,
                                         TimeRange range,
                                         const std::optional<std::string>& cursor) = 0;
};

// Drains the source page by page, then deduplicates by ts (later record
// wins) and returns candles sorted ascending, all within [start, end).
// Rejects an empty range before touching the source.
std::vector<Candle> fetch_candles(MarketSource& source, const std::string& symbol,
                                  const std::string& quote, std::int64_t interval_ms,
                                  TimeRange range);

std::vector<TradeRecord> fetch_trades(MarketSource& source, const std::string& symbol,
                                      const std::string& quote, TimeRange range);

// Reads pages out of CandleStore-layout CSV files.
class ArchiveSource : public MarketSource {
public:
    explicit ArchiveSource(std::filesystem::path root, std::size_t page_size = 1000);

    Page<Candle> candle_page(const std::string& symbol, const std::string& quote,
                             std::int64_t interval_ms, TimeRange range,
                             const std::optional<std::string>& cursor) override;

    Page<TradeRecord> trade_page(const std::string& symbol, const std::string& quote,
                                 TimeRange range,
                                 const std::optional<std::string>& cursor) override;

private:
    std::filesystem::path root_;
    std::size_t page_size_;
};

struct RemoteOptions {
    std::size_t page_size = 1000;
    int max_retries = 3;            // retries after the first attempt
    int backoff_base_ms = 250;      // doubled per retry
    int rate_limit_ms = 0;          // sleep between page requests
    int timeout_sec = 30;
};

// GET /candles?symbol=&quote=&interval=&start=&end=&limit=[&cursor=]
// GET /trades?symbol=&quote=&start=&end=&limit=[&cursor=]
// Response: {"data": [...], "next_cursor": "..."|null}. Candle rows are
// objects {ts,open,high,low,close,volume}; trade rows {ts,price,amount,side}.
class RemoteSource : public MarketSource {
public:
    RemoteSource(std::string base_url, RemoteOptions options = {});
    ~RemoteSource() override;

    Page<Candle> candle_page(const std::string& symbol, const std::string& quote,
                             std::int64_t interval_ms, TimeRange range,
                             const std::optional<std::string>& cursor) override;

    Page<TradeRecord> trade_page(const std::string& symbol, const std::string& quote,
                                 TimeRange range,
                                 const std::optional<std::string>& cursor) override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// http:// or https:// prefix selects RemoteSource, anything else is treated
// as an archive directory. Rate limit falls back to CRYPTONET_RATE_LIMIT_MS.
std::unique_ptr<MarketSource> open_source(const std::string& location, int rate_limit_ms = -1);

}  // namespace cryptonet
