#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cryptonet/candle.hpp"
#include "cryptonet/candle_store.hpp"
#include "cryptonet/market_source.hpp"
#include "cryptonet/matrix.hpp"

namespace cryptonet {

// Aligned close-price matrix, assets x timestamps. mask(i, t) is true only
// for directly observed bars; forward-filled gaps carry a price with mask
// false, and cells before an asset's first observation hold NaN.
struct PricePanel {
    std::vector<std::string> symbols;
    std::vector<std::int64_t> timestamps;  // uniform grid, strictly increasing
    Matrix prices;                         // N x T
    BoolMatrix mask;                       // N x T

    std::size_t n_assets() const { return symbols.size(); }
    std::size_t n_bars() const { return timestamps.size(); }

    // Checks the structural invariants; throws ValidationError.
    void validate() const;
};

// Builds the panel on the full grid of [range.start, range.end) at
// interval_ms spacing. Symbols with no observation in range are dropped
// (collected in `dropped` when given); EmptyPanel if none survive.
PricePanel load_panel(const CandleStore& store, const std::vector<std::string>& symbols,
                      const std::string& quote, std::int64_t interval_ms, TimeRange range,
                      std::vector<std::string>* dropped = nullptr);

// Same alignment logic over an in-memory candle batch, one vector per symbol.
PricePanel build_panel(const std::vector<std::string>& symbols,
                       const std::vector<std::vector<Candle>>& per_symbol,
                       std::int64_t interval_ms, TimeRange range,
                       std::vector<std::string>* dropped = nullptr);

}  // namespace cryptonet
