#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cryptonet/price_panel.hpp"

namespace cryptonet {

// Buy-and-hold report: bhr = (p_end - p_start) / p_start per symbol.
struct BhrReport {
    struct Entry {
        std::string symbol;
        double bhr = 0.0;
    };
    std::vector<Entry> entries;  // ascending by bhr, ties by symbol
    std::vector<std::string> dropped;  // symbols missing an endpoint observation
    double median = 0.0;
    double p25 = 0.0;
    double p75 = 0.0;
};

// Both timestamps must be grid points of the panel; symbols whose endpoint
// cells are not directly observed are dropped and reported. Percentiles use
// linear interpolation between order statistics.
BhrReport buy_and_hold(const PricePanel& panel, std::int64_t ts_start, std::int64_t ts_end);

}  // namespace cryptonet
