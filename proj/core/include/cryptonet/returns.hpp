#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cryptonet/matrix.hpp"
#include "cryptonet/price_panel.hpp"

namespace cryptonet {

enum class ReturnKind { Log, Simple };

ReturnKind parse_return_kind(const std::string& text);

// Per-bar returns. Column t holds the move from bar t to bar t+1 and is
// labeled with the later bar's timestamp; a cell is valid only when both
// source cells were directly observed.
struct ReturnPanel {
    std::vector<std::string> symbols;
    std::vector<std::int64_t> timestamps;  // length T-1
    Matrix values;                         // N x (T-1)
    BoolMatrix mask;
    ReturnKind kind = ReturnKind::Log;

    std::size_t n_assets() const { return symbols.size(); }
    std::size_t n_obs() const { return timestamps.size(); }
};

// Log: ln(p[t+1]/p[t]); Simple: p[t+1]/p[t] - 1.
ReturnPanel to_returns(const PricePanel& panel, ReturnKind kind = ReturnKind::Log);

// Divides each row by its first unmasked price, so the first observed cell
// of every row is exactly 1.0. Mask is preserved.
PricePanel rescale(const PricePanel& panel);

}  // namespace cryptonet
