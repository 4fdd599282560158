#include "cryptonet/price_panel.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <unordered_map>

#include <fmt/format.h>

#include "cryptonet/errors.hpp"

namespace cryptonet {

void PricePanel::validate() const {
    if (symbols.empty() || timestamps.empty()) {
        throw ValidationError("panel must have at least one symbol and one bar");
    }
    std::set<std::string> unique_syms(symbols.begin(), symbols.end());
    if (unique_syms.size() != symbols.size()) {
        throw ValidationError("panel has duplicate symbols");
    }
    for (std::size_t t = 1; t < timestamps.size(); ++t) {
        if (timestamps[t] <= timestamps[t - 1]) {
            throw ValidationError("panel timestamps must be strictly increasing");
        }
        if (t >= 2 && timestamps[t] - timestamps[t - 1] != timestamps[1] - timestamps[0]) {
            throw ValidationError("panel timestamps must be uniformly spaced");
        }
    }
    if (prices.rows() != symbols.size() || prices.cols() != timestamps.size() ||
        mask.rows() != prices.rows() || mask.cols() != prices.cols()) {
        throw ValidationError("panel matrix shape does not match symbols x timestamps");
    }
    for (std::size_t i = 0; i < prices.rows(); ++i) {
        for (std::size_t t = 0; t < prices.cols(); ++t) {
            if (mask(i, t) && !(prices(i, t) > 0.0)) {
                throw ValidationError(fmt::format("observed cell ({}, {}) must hold price > 0",
                                                  symbols[i], timestamps[t]));
            }
        }
    }
}

PricePanel build_panel(const std::vector<std::string>& symbols,
                       const std::vector<std::vector<Candle>>& per_symbol,
                       std::int64_t interval_ms, TimeRange range,
                       std::vector<std::string>* dropped) {
    if (symbols.empty()) throw InvalidParameter("panel needs at least one symbol");
    if (range.start >= range.end) throw InvalidParameter("panel range is empty");
    if (interval_ms <= 0) throw InvalidParameter("interval must be positive");
    if (range.start % interval_ms != 0) {
        throw InvalidParameter(fmt::format("range start {} is not aligned to {} ms bars",
                                           range.start, interval_ms));
    }
    if (symbols.size() != per_symbol.size()) {
        throw InvalidParameter("symbols and candle batches must align");
    }

    std::vector<std::int64_t> grid;
    for (std::int64_t ts = range.start; ts < range.end; ts += interval_ms) grid.push_back(ts);

    std::vector<std::string> kept;
    std::vector<std::unordered_map<std::int64_t, double>> closes;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        std::unordered_map<std::int64_t, double> by_ts;
        for (const auto& c : per_symbol[i]) {
            validate_candle(c, interval_ms, fmt::format("panel candle for {}", symbols[i]));
            if (c.ts >= range.start && c.ts < range.end) by_ts[c.ts] = c.close;
        }
        if (by_ts.empty()) {
            if (dropped) dropped->push_back(symbols[i]);
            continue;
        }
        kept.push_back(symbols[i]);
        closes.push_back(std::move(by_ts));
    }
    if (kept.empty()) {
        throw EmptyPanel(fmt::format("no symbol has candles in [{}, {})", range.start,
                                     range.end));
    }

    PricePanel panel;
    panel.symbols = kept;
    panel.timestamps = grid;
    panel.prices = Matrix(kept.size(), grid.size(), std::numeric_limits<double>::quiet_NaN());
    panel.mask = BoolMatrix(kept.size(), grid.size(), false);
    for (std::size_t i = 0; i < kept.size(); ++i) {
        double last = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t t = 0; t < grid.size(); ++t) {
            const auto it = closes[i].find(grid[t]);
            if (it != closes[i].end()) {
                last = it->second;
                panel.prices(i, t) = last;
                panel.mask.set(i, t, true);
            } else if (!std::isnan(last)) {
                // Gap after the first observation: carry the close forward.
                panel.prices(i, t) = last;
            }
            // Before the first observation the cell stays NaN and masked.
        }
    }
    panel.validate();
    return panel;
}

PricePanel load_panel(const CandleStore& store, const std::vector<std::string>& symbols,
                      const std::string& quote, std::int64_t interval_ms, TimeRange range,
                      std::vector<std::string>* dropped) {
    if (symbols.empty()) throw InvalidParameter("panel needs at least one symbol");
    std::vector<std::vector<Candle>> per_symbol;
    per_symbol.reserve(symbols.size());
    for (const auto& symbol : symbols) {
        const auto path = store.candle_path(symbol, quote, interval_ms);
        if (!std::filesystem::exists(path)) {
            per_symbol.emplace_back();
            continue;
        }
        auto candles = load_candles(path);
        std::erase_if(candles, [&](const Candle& c) {
            return c.symbol != symbol || c.quote != quote;
        });
        per_symbol.push_back(std::move(candles));
    }
    return build_panel(symbols, per_symbol, interval_ms, range, dropped);
}

}  // namespace cryptonet
