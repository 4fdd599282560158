#include <cmath>
#include <limits>
#include <random>
#include <set>

#include <doctest.h>

#include "cryptonet/bhr.hpp"
#include "cryptonet/errors.hpp"
#include "cryptonet/returns.hpp"
#include "test_support.hpp"

using namespace cryptonet;
using testsup::kHourMs;
using testsup::kPanelStart;
using testsup::panel_from_closes;

TEST_CASE("to_returns: constant prices give zero returns") {
    const auto panel = panel_from_closes({{42.0, 42.0, 42.0, 42.0}});
    for (const auto kind : {ReturnKind::Log, ReturnKind::Simple}) {
        const auto r = to_returns(panel, kind);
        REQUIRE(r.n_obs() == 3);
        for (std::size_t t = 0; t < 3; ++t) CHECK(r.values(0, t) == 0.0);
    }
}

TEST_CASE("to_returns: closed forms for a doubling") {
    const auto panel = panel_from_closes({{100.0, 200.0}});
    const auto log_r = to_returns(panel, ReturnKind::Log);
    CHECK(log_r.values(0, 0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(log_r.kind == ReturnKind::Log);
    const auto simple_r = to_returns(panel, ReturnKind::Simple);
    CHECK(simple_r.values(0, 0) == 1.0);
    CHECK(to_returns(panel).kind == ReturnKind::Log);  // default transform
}

TEST_CASE("to_returns: timestamps are the later bar, one bar is too few") {
    const auto panel = panel_from_closes({{10.0, 11.0, 12.0}});
    const auto r = to_returns(panel);
    REQUIRE(r.timestamps.size() == 2);
    CHECK(r.timestamps[0] == kPanelStart + kHourMs);
    CHECK(r.timestamps[1] == kPanelStart + 2 * kHourMs);
    CHECK_THROWS_AS(to_returns(panel_from_closes({{10.0}})), EmptyPanel);
}

TEST_CASE("to_returns: log returns telescope back to the price ratio") {
    const auto panel = testsup::factor_panel(4, 50, 21);
    const auto r = to_returns(panel, ReturnKind::Log);
    for (std::size_t i = 0; i < panel.n_assets(); ++i) {
        double sum = 0.0;
        for (std::size_t t = 0; t < r.n_obs(); ++t) sum += r.values(i, t);
        const double ratio = panel.prices(i, panel.n_bars() - 1) / panel.prices(i, 0);
        CHECK(std::fabs(std::exp(sum) - ratio) <= 1e-12 * ratio);
    }
}

TEST_CASE("to_returns: masked source cells mask the return cell") {
    auto panel = testsup::factor_panel(2, 10, 33);
    panel.mask.set(0, 4, false);
    const auto r = to_returns(panel);
    CHECK_FALSE(r.mask(0, 3));  // uses bars 3 and 4
    CHECK_FALSE(r.mask(0, 4));  // uses bars 4 and 5
    CHECK(r.mask(0, 2));
    CHECK(r.mask(1, 3));
}

TEST_CASE("rescale: rows divide by their first unmasked price") {
    const auto panel = panel_from_closes({{50.0, 100.0, 25.0}});
    const auto scaled = rescale(panel);
    CHECK(scaled.prices(0, 0) == 1.0);
    CHECK(scaled.prices(0, 1) == 2.0);
    CHECK(scaled.prices(0, 2) == 0.5);
}

TEST_CASE("rescale: single cell row becomes exactly one") {
    const auto panel = panel_from_closes({{73.25}});
    CHECK(rescale(panel).prices(0, 0) == 1.0);
}

TEST_CASE("rescale: leading masked cells are skipped") {
    // Hand-built row: bars 0-1 never observed, first observation at bar 2.
    PricePanel panel = panel_from_closes({{7.0, 7.0, 8.0, 10.0}});
    panel.mask.set(0, 0, false);
    panel.mask.set(0, 1, false);
    panel.prices(0, 0) = std::numeric_limits<double>::quiet_NaN();
    panel.prices(0, 1) = std::numeric_limits<double>::quiet_NaN();
    const auto scaled = rescale(panel);
    CHECK(std::isnan(scaled.prices(0, 0)));
    CHECK(scaled.prices(0, 2) == 1.0);
    CHECK(scaled.prices(0, 3) == 1.25);
}

TEST_CASE("rescale: preserves return panels exactly") {
    const auto panel = testsup::factor_panel(3, 40, 27);
    const auto scaled = rescale(panel);
    for (const auto kind : {ReturnKind::Log, ReturnKind::Simple}) {
        const auto before = to_returns(panel, kind);
        const auto after = to_returns(scaled, kind);
        for (std::size_t i = 0; i < before.n_assets(); ++i) {
            for (std::size_t t = 0; t < before.n_obs(); ++t) {
                CHECK(std::fabs(before.values(i, t) - after.values(i, t)) <= 1e-12);
            }
        }
    }
}

TEST_CASE("buy_and_hold: flat and halved prices") {
    const auto panel = panel_from_closes({{100.0, 120.0, 100.0}, {100.0, 80.0, 50.0}});
    const auto report = buy_and_hold(panel, kPanelStart, kPanelStart + 2 * kHourMs);
    REQUIRE(report.entries.size() == 2);
    // Sorted ascending by bhr: S1 at -0.5, S0 at 0.
    CHECK(report.entries[0].symbol == "S1");
    CHECK(report.entries[0].bhr == -0.5);
    CHECK(report.entries[1].symbol == "S0");
    CHECK(report.entries[1].bhr == 0.0);
}

TEST_CASE("buy_and_hold: off-grid timestamps are rejected") {
    const auto panel = panel_from_closes({{1.0, 2.0, 3.0}});
    CHECK_THROWS_AS(buy_and_hold(panel, kPanelStart + 1, kPanelStart + 2 * kHourMs),
                    TimestampOffGrid);
    CHECK_THROWS_AS(buy_and_hold(panel, kPanelStart, kPanelStart + 5 * kHourMs),
                    TimestampOffGrid);
}

TEST_CASE("buy_and_hold: masked endpoints drop the symbol and report it") {
    auto panel = panel_from_closes({{10.0, 11.0, 12.0}, {20.0, 21.0, 22.0}});
    panel.mask.set(1, 2, false);
    const auto report = buy_and_hold(panel, kPanelStart, kPanelStart + 2 * kHourMs);
    REQUIRE(report.entries.size() == 1);
    CHECK(report.entries[0].symbol == "S0");
    REQUIRE(report.dropped.size() == 1);
    CHECK(report.dropped[0] == "S1");
}

TEST_CASE("buy_and_hold: entries are a permutation of kept symbols") {
    const auto panel = testsup::factor_panel(7, 30, 41);
    const auto report = buy_and_hold(panel, kPanelStart, kPanelStart + 29 * kHourMs);
    std::set<std::string> seen;
    for (const auto& e : report.entries) seen.insert(e.symbol);
    CHECK(seen == std::set<std::string>(panel.symbols.begin(), panel.symbols.end()));
    for (std::size_t i = 1; i < report.entries.size(); ++i) {
        CHECK(report.entries[i - 1].bhr <= report.entries[i].bhr);
    }
}

TEST_CASE("buy_and_hold: percentiles follow the interpolation rule") {
    // Four known bhr values: 100 -> {80, 110, 150, 200} gives {-0.2, 0.1, 0.5, 1.0}.
    const auto panel = panel_from_closes(
        {{100.0, 80.0}, {100.0, 110.0}, {100.0, 150.0}, {100.0, 200.0}});
    const auto report = buy_and_hold(panel, kPanelStart, kPanelStart + kHourMs);
    CHECK(report.p25 == doctest::Approx(-0.2 + 0.75 * 0.3).epsilon(1e-12));
    CHECK(report.median == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(report.p75 == doctest::Approx(0.5 + 0.25 * 0.5).epsilon(1e-12));
}

TEST_CASE("buy_and_hold: simple returns compound to the same endpoint value") {
    const auto panel = testsup::factor_panel(5, 60, 43);
    const auto r = to_returns(panel, ReturnKind::Simple);
    const auto report = buy_and_hold(panel, kPanelStart,
                                     kPanelStart + 59 * kHourMs);
    for (const auto& entry : report.entries) {
        const auto it = std::find(panel.symbols.begin(), panel.symbols.end(), entry.symbol);
        const auto row = static_cast<std::size_t>(it - panel.symbols.begin());
        double compounded = 1.0;
        for (std::size_t t = 0; t < r.n_obs(); ++t) compounded *= 1.0 + r.values(row, t);
        CHECK(std::fabs(compounded - 1.0 - entry.bhr) <= 1e-12 * (1.0 + std::fabs(entry.bhr)));
    }
}
