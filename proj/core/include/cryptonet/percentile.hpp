#pragma once

#include <cmath>
#include <span>

#include "cryptonet/errors.hpp"

namespace cryptonet {

// Linear interpolation between order statistics: h = (n-1) * p / 100,
// result = x[floor(h)] + frac(h) * (x[floor(h)+1] - x[floor(h)]).
// The one percentile rule used everywhere (BHR summaries, centrality bands).
inline double percentile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) {
        throw InvalidParameter("percentile of empty sample");
    }
    if (!(p >= 0.0 && p <= 100.0)) {
        throw InvalidParameter("percentile rank must be in [0, 100]");
    }
    const double h = static_cast<double>(sorted.size() - 1) * p / 100.0;
    const auto lo = static_cast<std::size_t>(h);
    if (lo + 1 >= sorted.size()) return sorted[sorted.size() - 1];
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace cryptonet
