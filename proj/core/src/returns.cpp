#include "cryptonet/returns.hpp"

#include <cmath>

#include <fmt/format.h>

#include "cryptonet/errors.hpp"

namespace cryptonet {

ReturnKind parse_return_kind(const std::string& text) {
    if (text == "log") return ReturnKind::Log;
    if (text == "simple") return ReturnKind::Simple;
    throw InvalidParameter(fmt::format("return kind must be log or simple, got '{}'", text));
}

ReturnPanel to_returns(const PricePanel& panel, ReturnKind kind) {
    if (panel.n_bars() < 2) {
        throw EmptyPanel("need at least 2 bars to compute returns");
    }
    const std::size_t n = panel.n_assets();
    const std::size_t t_ret = panel.n_bars() - 1;
    ReturnPanel out;
    out.symbols = panel.symbols;
    out.kind = kind;
    out.timestamps.assign(panel.timestamps.begin() + 1, panel.timestamps.end());
    out.values = Matrix(n, t_ret, 0.0);
    out.mask = BoolMatrix(n, t_ret, false);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t t = 0; t < t_ret; ++t) {
            const double p0 = panel.prices(i, t);
            const double p1 = panel.prices(i, t + 1);
            if (std::isnan(p0) || std::isnan(p1)) continue;
            out.values(i, t) = kind == ReturnKind::Log ? std::log(p1 / p0) : p1 / p0 - 1.0;
            out.mask.set(i, t, panel.mask(i, t) && panel.mask(i, t + 1));
        }
    }
    return out;
}

PricePanel rescale(const PricePanel& panel) {
    if (panel.n_bars() == 0 || panel.n_assets() == 0) {
        throw EmptyPanel("cannot rescale an empty panel");
    }
    PricePanel out = panel;
    for (std::size_t i = 0; i < panel.n_assets(); ++i) {
        double base = 0.0;
        bool found = false;
        for (std::size_t t = 0; t < panel.n_bars(); ++t) {
            if (panel.mask(i, t)) {
                base = panel.prices(i, t);
                found = true;
                break;
            }
        }
        if (!found) {
            throw EmptyPanel(fmt::format("row {} has no observed price", panel.symbols[i]));
        }
        for (std::size_t t = 0; t < panel.n_bars(); ++t) {
            if (!std::isnan(panel.prices(i, t))) out.prices(i, t) = panel.prices(i, t) / base;
        }
    }
    return out;
}

}  // namespace cryptonet
