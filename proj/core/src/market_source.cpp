#include "cryptonet/market_source.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <map>

#include <fmt/format.h>

#include "cryptonet/candle_store.hpp"
#include "cryptonet/errors.hpp"

namespace cryptonet {

namespace {

void check_range(TimeRange range) {
    if (range.start >= range.end) {
        throw InvalidParameter(fmt::format("empty time range [{}, {})", range.start, range.end));
    }
}

std::size_t parse_cursor(const std::optional<std::string>& cursor) {
    if (!cursor) return 0;
    std::size_t v = 0;
    const auto res = std::from_chars(cursor->data(), cursor->data() + cursor->size(), v);
    if (res.ec != std::errc{} || res.ptr != cursor->data() + cursor->size()) {
        throw SchemaError(fmt::format("bad pagination cursor '{}'", *cursor));
    }
    return v;
}

}  // namespace

std::vector<Candle> fetch_candles(MarketSource& source, const std::string& symbol,
                                  const std::string& quote, std::int64_t interval_ms,
                                  TimeRange range) {
    check_range(range);
    if (interval_ms <= 0) throw InvalidParameter("interval must be positive");
    std::vector<Candle> raw;
    std::optional<std::string> cursor;
    while (true) {
        auto page = source.candle_page(symbol, quote, interval_ms, range, cursor);
        raw.insert(raw.end(), page.items.begin(), page.items.end());
        if (!page.next_cursor) break;
        cursor = std::move(page.next_cursor);
    }
    // Last occurrence wins, then ascending ts.
    std::map<std::int64_t, Candle> dedup;
    for (auto& c : raw) {
        if (c.ts < range.start || c.ts >= range.end) continue;
        validate_candle(c, interval_ms, fmt::format("fetched candle for {}", symbol));
        dedup[c.ts] = std::move(c);
    }
    std::vector<Candle> out;
    out.reserve(dedup.size());
    for (auto& [ts, c] : dedup) out.push_back(std::move(c));
    return out;
}

std::vector<TradeRecord> fetch_trades(MarketSource& source, const std::string& symbol,
                                      const std::string& quote, TimeRange range) {
    check_range(range);
    std::vector<TradeRecord> raw;
    std::optional<std::string> cursor;
    while (true) {
        auto page = source.trade_page(symbol, quote, range, cursor);
        raw.insert(raw.end(), page.items.begin(), page.items.end());
        if (!page.next_cursor) break;
        cursor = std::move(page.next_cursor);
    }
    std::vector<TradeRecord> out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i].ts < range.start || raw[i].ts >= range.end) continue;
        validate_trade(raw[i], fmt::format("fetched trade {} for {}", i, symbol));
        out.push_back(std::move(raw[i]));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const TradeRecord& a, const TradeRecord& b) { return a.ts < b.ts; });
    return out;
}

ArchiveSource::ArchiveSource(std::filesystem::path root, std::size_t page_size)
    : root_(std::move(root)), page_size_(page_size == 0 ? 1000 : page_size) {}

Page<Candle> ArchiveSource::candle_page(const std::string& symbol, const std::string& quote,
                                        std::int64_t interval_ms, TimeRange range,
                                        const std::optional<std::string>& cursor) {
    const auto path = CandleStore(root_).candle_path(symbol, quote, interval_ms);
    if (!std::filesystem::exists(path)) {
        throw SymbolUnknown(fmt::format("no archive file for {}/{} at '{}'", symbol, quote,
                                        path.string()));
    }
    auto all = load_candles(path);
    std::erase_if(all, [&](const Candle& c) {
        return c.symbol != symbol || c.quote != quote || c.ts < range.start || c.ts >= range.end;
    });
    const std::size_t offset = parse_cursor(cursor);
    Page<Candle> page;
    const std::size_t end = std::min(all.size(), offset + page_size_);
    for (std::size_t i = offset; i < end; ++i) page.items.push_back(std::move(all[i]));
    if (end < all.size()) page.next_cursor = fmt::format("{}", end);
    return page;
}

Page<TradeRecord> ArchiveSource::trade_page(const std::string& symbol, const std::string& quote,
                                            TimeRange range,
                                            const std::optional<std::string>& cursor) {
    const auto path = CandleStore(root_).trade_path(symbol, quote);
    if (!std::filesystem::exists(path)) {
        throw SymbolUnknown(fmt::format("no archive file for {}/{} trades at '{}'", symbol,
                                        quote, path.string()));
    }
    auto all = load_trades(path);
    std::erase_if(all, [&](const TradeRecord& t) {
        return t.symbol != symbol || t.quote != quote || t.ts < range.start || t.ts >= range.end;
    });
    const std::size_t offset = parse_cursor(cursor);
    Page<TradeRecord> page;
    const std::size_t end = std::min(all.size(), offset + page_size_);
    for (std::size_t i = offset; i < end; ++i) page.items.push_back(std::move(all[i]));
    if (end < all.size()) page.next_cursor = fmt::format("{}", end);
    return page;
}

std::unique_ptr<MarketSource> open_source(const std::string& location, int rate_limit_ms) {
    if (location.starts_with("http://") || location.starts_with("https://")) {
        RemoteOptions opts;
        if (rate_limit_ms >= 0) {
            opts.rate_limit_ms = rate_limit_ms;
        } else if (const char* env = std::getenv("CRYPTONET_RATE_LIMIT_MS")) {
            opts.rate_limit_ms = std::atoi(env);
        }
        return std::make_unique<RemoteSource>(location, opts);
    }
    return std::make_unique<ArchiveSource>(location);
}

}  // namespace cryptonet
