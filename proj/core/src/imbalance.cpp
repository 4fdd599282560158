#include "cryptonet/imbalance.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "cryptonet/errors.hpp"

namespace cryptonet {

Bucket parse_bucket(const std::string& text) {
    if (text == "minute") return Bucket::Minute;
    if (text == "hour") return Bucket::Hour;
    throw InvalidParameter(fmt::format("bucket must be minute or hour, got '{}'", text));
}

const char* bucket_label(Bucket b) {
    return b == Bucket::Minute ? "minute" : "hour";
}

std::int64_t notional_units(double price, double amount) {
    const double notional = price * amount * static_cast<double>(kNotionalScale);
    if (!std::isfinite(notional) || notional >= 9.2e18 || notional < 0.0) {
        throw ValidationError(fmt::format("trade notional {} x {} out of range", price,
                                          amount));
    }
    return std::llround(notional);
}

double ImbalanceSeries::buy_total(std::size_t i) const {
    return static_cast<double>(buy_units[i]) / static_cast<double>(kNotionalScale);
}

double ImbalanceSeries::sell_total(std::size_t i) const {
    return static_cast<double>(sell_units[i]) / static_cast<double>(kNotionalScale);
}

double ImbalanceSeries::value(std::size_t i) const {
    return static_cast<double>(imbalance_units(i)) / static_cast<double>(kNotionalScale);
}

double ImbalancePeak::value() const {
    return static_cast<double>(imbalance_units) / static_cast<double>(kNotionalScale);
}

namespace {

std::int64_t bucket_start(std::int64_t ts, Bucket bucket) {
    const auto width = static_cast<std::int64_t>(bucket);
    std::int64_t b = ts / width;
    if (ts < 0 && ts % width != 0) --b;  // floor toward -inf
    return b * width;
}

void checked_add(std::int64_t& acc, std::int64_t add, std::int64_t ts) {
    if (__builtin_add_overflow(acc, add, &acc)) {
        throw ValidationError(fmt::format("bucket at {} overflows the notional accumulator",
                                          ts));
    }
}

struct Totals {
    std::int64_t buy = 0;
    std::int64_t sell = 0;
};

ImbalanceSeries from_map(const std::map<std::int64_t, Totals>& per_bucket, Bucket bucket,
                         std::string symbol, std::string quote, bool dense) {
    ImbalanceSeries series;
    series.bucket = bucket;
    series.symbol = std::move(symbol);
    series.quote = std::move(quote);
    if (per_bucket.empty()) return series;
    if (dense) {
        const auto width = static_cast<std::int64_t>(bucket);
        const std::int64_t first = per_bucket.begin()->first;
        const std::int64_t last = per_bucket.rbegin()->first;
        for (std::int64_t ts = first; ts <= last; ts += width) {
            const auto it = per_bucket.find(ts);
            series.timestamps.push_back(ts);
            series.buy_units.push_back(it == per_bucket.end() ? 0 : it->second.buy);
            series.sell_units.push_back(it == per_bucket.end() ? 0 : it->second.sell);
        }
    } else {
        for (const auto& [ts, totals] : per_bucket) {
            series.timestamps.push_back(ts);
            series.buy_units.push_back(totals.buy);
            series.sell_units.push_back(totals.sell);
        }
    }
    return series;
}

}  // namespace

ImbalanceSeries compute_imbalance(std::span<const TradeRecord> trades, Bucket bucket,
                                  ImbalanceOptions options) {
    if (trades.empty()) {
        if (options.allow_empty) return from_map({}, bucket, "", "", false);
        throw EmptyInput("imbalance of an empty tape");
    }
    const std::string& symbol = trades.front().symbol;
    const std::string& quote = trades.front().quote;

    std::vector<const TradeRecord*> sorted;
    sorted.reserve(trades.size());
    for (const auto& t : trades) {
        if (t.symbol != symbol || t.quote != quote) {
            throw MixedSymbols(fmt::format("tape mixes {}/{} with {}/{}", symbol, quote,
                                           t.symbol, t.quote));
        }
        sorted.push_back(&t);
    }
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const TradeRecord* a, const TradeRecord* b) { return a->ts < b->ts; });

    std::map<std::int64_t, Totals> per_bucket;
    for (const TradeRecord* t : sorted) {
        validate_trade(*t, "imbalance input");
        const std::int64_t units = notional_units(t->price, t->amount);
        Totals& totals = per_bucket[bucket_start(t->ts, bucket)];
        if (t->side == Side::Sell) {
            checked_add(totals.sell, units, t->ts);
        } else {
            checked_add(totals.buy, units, t->ts);
        }
    }
    return from_map(per_bucket, bucket, symbol, quote, options.dense);
}

ImbalanceSeries merge_imbalance(const ImbalanceSeries& a, const ImbalanceSeries& b) {
    if (a.bucket != b.bucket) throw InvalidParameter("cannot merge different bucket sizes");
    if (a.size() == 0) return b;
    if (b.size() == 0) return a;
    if (a.symbol != b.symbol || a.quote != b.quote) {
        throw MixedSymbols(fmt::format("cannot merge {}/{} with {}/{}", a.symbol, a.quote,
                                       b.symbol, b.quote));
    }
    std::map<std::int64_t, Totals> per_bucket;
    for (const ImbalanceSeries* s : {&a, &b}) {
        for (std::size_t i = 0; i < s->size(); ++i) {
            Totals& totals = per_bucket[s->timestamps[i]];
            checked_add(totals.buy, s->buy_units[i], s->timestamps[i]);
            checked_add(totals.sell, s->sell_units[i], s->timestamps[i]);
        }
    }
    // Dense inputs stay dense only if their union is contiguous; emit the
    // sparse union and let callers re-densify if needed.
    return from_map(per_bucket, a.bucket, a.symbol, a.quote, false);
}

std::vector<ImbalancePeak> peak_report(const ImbalanceSeries& series, int k) {
    if (k < 1) throw InvalidParameter("peak report needs k >= 1");
    std::vector<ImbalancePeak> peaks;
    peaks.reserve(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        peaks.push_back({series.timestamps[i], series.imbalance_units(i)});
    }
    std::sort(peaks.begin(), peaks.end(), [](const ImbalancePeak& x, const ImbalancePeak& y) {
        const auto ax = std::abs(x.imbalance_units);
        const auto ay = std::abs(y.imbalance_units);
        if (ax != ay) return ax > ay;
        return x.ts < y.ts;
    });
    if (peaks.size() > static_cast<std::size_t>(k)) peaks.resize(static_cast<std::size_t>(k));
    return peaks;
}

std::string format_units(std::int64_t units) {
    const bool negative = units < 0;
    std::uint64_t mag = negative ? static_cast<std::uint64_t>(-(units + 1)) + 1
                                 : static_cast<std::uint64_t>(units);
    const std::uint64_t scale = static_cast<std::uint64_t>(kNotionalScale);
    const std::uint64_t whole = mag / scale;
    std::uint64_t frac = mag % scale;
    std::string out = negative ? "-" : "";
    out += fmt::format("{}", whole);
    if (frac != 0) {
        std::string digits = fmt::format("{:08d}", frac);
        while (!digits.empty() && digits.back() == '0') digits.pop_back();
        out += '.';
        out += digits;
    }
    return out;
}

}  // namespace cryptonet
