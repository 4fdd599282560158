#include "cryptonet/candle_store.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include <fmt/format.h>

#include "cryptonet/csv.hpp"
#include "cryptonet/errors.hpp"
#include "cryptonet/time_utils.hpp"

namespace cryptonet {

namespace {

Candle candle_from_row(const std::vector<std::string>& row, const std::string& context) {
    if (row.size() != 8) {
        throw SchemaError(fmt::format("{}: expected 8 candle fields, got {}", context,
                                      row.size()));
    }
    Candle c;
    c.symbol = row[0];
    c.quote = row[1];
    c.ts = csv::parse_int(row[2], context);
    c.open = csv::parse_double(row[3], context);
    c.high = csv::parse_double(row[4], context);
    c.low = csv::parse_double(row[5], context);
    c.close = csv::parse_double(row[6], context);
    c.volume = csv::parse_double(row[7], context);
    return c;
}

std::string candle_to_row(const Candle& c) {
    return fmt::format("{},{},{},{},{},{},{},{}", c.symbol, c.quote, c.ts,
                       csv::format_double(c.open), csv::format_double(c.high),
                       csv::format_double(c.low), csv::format_double(c.close),
                       csv::format_double(c.volume));
}

TradeRecord trade_from_row(const std::vector<std::string>& row, const std::string& context) {
    if (row.size() != 6) {
        throw SchemaError(fmt::format("{}: expected 6 trade fields, got {}", context,
                                      row.size()));
    }
    TradeRecord t;
    t.symbol = row[0];
    t.quote = row[1];
    t.ts = csv::parse_int(row[2], context);
    t.price = csv::parse_double(row[3], context);
    t.amount = csv::parse_double(row[4], context);
    t.side = parse_side(row[5]);
    return t;
}

std::string trade_to_row(const TradeRecord& t) {
    return fmt::format("{},{},{},{},{},{}", t.symbol, t.quote, t.ts,
                       csv::format_double(t.price), csv::format_double(t.amount),
                       side_label(t.side));
}

void check_header(const std::vector<std::string>& header, const char* expected,
                  const std::filesystem::path& path) {
    std::string joined;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i > 0) joined += ',';
        joined += header[i];
    }
    if (joined != expected) {
        throw SchemaError(fmt::format("'{}': unexpected header '{}', want '{}'", path.string(),
                                      joined, expected));
    }
}

}  // namespace

std::size_t persist_candles(const std::vector<Candle>& candles,
                            const std::filesystem::path& store_path) {
    for (std::size_t i = 0; i < candles.size(); ++i) {
        validate_candle(candles[i], 0, fmt::format("batch row {}", i));
    }
    // Later record wins: existing rows applied first, then the batch in order.
    std::map<std::tuple<std::string, std::string, std::int64_t>, Candle> merged;
    if (std::filesystem::exists(store_path)) {
        for (const auto& c : load_candles(store_path)) {
            merged[{c.symbol, c.quote, c.ts}] = c;
        }
    }
    for (const auto& c : candles) {
        merged[{c.symbol, c.quote, c.ts}] = c;
    }
    std::string out(kCandleCsvHeader);
    out += '\n';
    for (const auto& [key, c] : merged) {
        out += candle_to_row(c);
        out += '\n';
    }
    csv::write_file_atomic(store_path, out);
    return merged.size();
}

std::vector<Candle> load_candles(const std::filesystem::path& store_path) {
    const auto table = csv::read_table(store_path);
    check_header(table.header, kCandleCsvHeader, store_path);
    std::vector<Candle> out;
    out.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto context = fmt::format("{} row {}", store_path.string(), i + 2);
        Candle c = candle_from_row(table.rows[i], context);
        validate_candle(c, 0, context);
        out.push_back(std::move(c));
    }
    return out;
}

std::size_t persist_trades(const std::vector<TradeRecord>& trades,
                           const std::filesystem::path& store_path) {
    for (std::size_t i = 0; i < trades.size(); ++i) {
        validate_trade(trades[i], fmt::format("batch row {}", i));
    }
    auto key = [](const TradeRecord& t) {
        return std::tuple(t.ts, t.symbol, t.quote, t.price, t.amount, t.side);
    };
    std::set<std::tuple<std::int64_t, std::string, std::string, double, double, Side>> merged;
    if (std::filesystem::exists(store_path)) {
        for (const auto& t : load_trades(store_path)) merged.insert(key(t));
    }
    for (const auto& t : trades) merged.insert(key(t));
    std::string out(kTradeCsvHeader);
    out += '\n';
    for (const auto& [ts, symbol, quote, price, amount, side] : merged) {
        out += trade_to_row(TradeRecord{symbol, quote, ts, price, amount, side});
        out += '\n';
    }
    csv::write_file_atomic(store_path, out);
    return merged.size();
}

std::vector<TradeRecord> load_trades(const std::filesystem::path& store_path) {
    const auto table = csv::read_table(store_path);
    check_header(table.header, kTradeCsvHeader, store_path);
    std::vector<TradeRecord> out;
    out.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto context = fmt::format("{} row {}", store_path.string(), i + 2);
        TradeRecord t = trade_from_row(table.rows[i], context);
        validate_trade(t, context);
        out.push_back(std::move(t));
    }
    return out;
}

std::filesystem::path CandleStore::candle_path(const std::string& symbol,
                                               const std::string& quote,
                                               std::int64_t interval_ms) const {
    return root_ / fmt::format("{}-{}-{}.csv", symbol, quote, interval_label(interval_ms));
}

std::filesystem::path CandleStore::trade_path(const std::string& symbol,
                                              const std::string& quote) const {
    return root_ / fmt::format("{}-{}-trades.csv", symbol, quote);
}

}  // namespace cryptonet
