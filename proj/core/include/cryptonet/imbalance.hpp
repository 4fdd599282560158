#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cryptonet/candle.hpp"

namespace cryptonet {

enum class Bucket : std::int64_t {
    Minute = 60'000,
    Hour = 3'600'000,
};

Bucket parse_bucket(const std::string& text);
const char* bucket_label(Bucket b);

// Per-trade notionals are quantized to 1e-8 quote units and accumulated in
// integers, so bucket sums are exact and associative: sharding the tape by
// time and merging reproduces the single-pass result bit for bit.
inline constexpr std::int64_t kNotionalScale = 100'000'000;

std::int64_t notional_units(double price, double amount);

// Signed per-bucket notional flow; positive = selling pressure.
struct ImbalanceSeries {
    Bucket bucket = Bucket::Minute;
    std::string symbol;
    std::string quote;
    std::vector<std::int64_t> timestamps;  // bucket starts, strictly increasing
    std::vector<std::int64_t> buy_units;   // scaled by kNotionalScale
    std::vector<std::int64_t> sell_units;

    std::size_t size() const { return timestamps.size(); }
    std::int64_t imbalance_units(std::size_t i) const { return sell_units[i] - buy_units[i]; }
    double buy_total(std::size_t i) const;
    double sell_total(std::size_t i) const;
    double value(std::size_t i) const;  // sell_total - buy_total
};

struct ImbalanceOptions {
    bool dense = false;        // emit zero buckets between first and last trade
    bool allow_empty = false;  // empty tape yields an empty series instead of an error
};

// Buckets by floor(ts / bucket); a trade exactly on a boundary belongs to
// the later bucket. The tape is sorted defensively; all trades must share
// one symbol and quote.
ImbalanceSeries compute_imbalance(std::span<const TradeRecord> trades, Bucket bucket,
                                  ImbalanceOptions options = {});

// Combines two shards of the same tape (same bucket size, symbol, quote).
ImbalanceSeries merge_imbalance(const ImbalanceSeries& a, const ImbalanceSeries& b);

struct ImbalancePeak {
    std::int64_t ts = 0;
    std::int64_t imbalance_units = 0;

    double value() const;
};

// Top-k buckets by |imbalance|, ties broken by the earlier timestamp.
std::vector<ImbalancePeak> peak_report(const ImbalanceSeries& series, int k);

// Decimal rendering of scaled units without a float round trip.
std::string format_units(std::int64_t units);

}  // namespace cryptonet
