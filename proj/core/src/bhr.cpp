#include "cryptonet/bhr.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "cryptonet/errors.hpp"
#include "cryptonet/percentile.hpp"

namespace cryptonet {

namespace {

std::size_t grid_index(const PricePanel& panel, std::int64_t ts) {
    const auto it = std::lower_bound(panel.timestamps.begin(), panel.timestamps.end(), ts);
    if (it == panel.timestamps.end() || *it != ts) {
        throw TimestampOffGrid(fmt::format("{} is not on the panel grid", ts));
    }
    return static_cast<std::size_t>(it - panel.timestamps.begin());
}

}  // namespace

BhrReport buy_and_hold(const PricePanel& panel, std::int64_t ts_start, std::int64_t ts_end) {
    if (panel.n_assets() == 0 || panel.n_bars() == 0) {
        throw EmptyPanel("buy-and-hold needs a non-empty panel");
    }
    if (ts_start >= ts_end) {
        throw InvalidParameter("buy-and-hold requires ts_start < ts_end");
    }
    const std::size_t t0 = grid_index(panel, ts_start);
    const std::size_t t1 = grid_index(panel, ts_end);

    BhrReport report;
    for (std::size_t i = 0; i < panel.n_assets(); ++i) {
        if (!panel.mask(i, t0) || !panel.mask(i, t1)) {
            report.dropped.push_back(panel.symbols[i]);
            continue;
        }
        const double p0 = panel.prices(i, t0);
        const double p1 = panel.prices(i, t1);
        report.entries.push_back({panel.symbols[i], (p1 - p0) / p0});
    }
    if (report.entries.empty()) {
        throw EmptyPanel("every symbol lacked an endpoint observation");
    }
    std::sort(report.entries.begin(), report.entries.end(),
              [](const BhrReport::Entry& a, const BhrReport::Entry& b) {
                  return a.bhr != b.bhr ? a.bhr < b.bhr : a.symbol < b.symbol;
              });
    std::vector<double> values;
    values.reserve(report.entries.size());
    for (const auto& e : report.entries) values.push_back(e.bhr);
    report.p25 = percentile_sorted(values, 25.0);
    report.median = percentile_sorted(values, 50.0);
    report.p75 = percentile_sorted(values, 75.0);
    return report;
}

}  // namespace cryptonet
