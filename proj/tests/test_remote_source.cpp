#include <atomic>
#include <thread>

#include <doctest.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "cryptonet/errors.hpp"
#include "cryptonet/market_source.hpp"
#include "test_support.hpp"

using namespace cryptonet;
using nlohmann::json;
using testsup::kHourMs;
using testsup::kPanelStart;

namespace {

// Loopback fixture server speaking the documented candle/trade wire format.
class FixtureServer {
public:
    httplib::Server server;
    int port = 0;
    std::thread thread;
    std::atomic<int> hits{0};
    std::atomic<int> failures_to_serve{0};

    FixtureServer() {
        server.Get("/candles", [this](const httplib::Request& req, httplib::Response& res) {
            ++hits;
            if (failures_to_serve.fetch_sub(1) > 0) {
                res.status = 503;
                return;
            }
            if (req.get_param_value("symbol") == "NOPE") {
                res.status = 404;
                res.set_content(R"({"error":"unknown symbol"})", "application/json");
                return;
            }
            if (req.get_param_value("symbol") == "GARBLED") {
                res.set_content("this is not json", "application/json");
                return;
            }
            if (req.get_param_value("symbol") == "BADSHAPE") {
                res.set_content(R"({"rows": []})", "application/json");
                return;
            }
            // Two pages of 3 + 2 hourly bars; page two includes a replayed
            // duplicate of bar 2 with a corrected close.
            const std::string cursor = req.get_param_value("cursor");
            json body;
            json rows = json::array();
            const auto bar = [&](int t, double close) {
                json row;
                row["ts"] = kPanelStart + t * kHourMs;
                row["open"] = close * 0.99;
                row["high"] = close * 1.02;
                row["low"] = close * 0.98;
                row["close"] = close;
                row["volume"] = 5.0;
                rows.push_back(row);
            };
            if (cursor.empty()) {
                bar(0, 20.0);
                bar(1, 21.0);
                bar(2, 22.0);
                body["next_cursor"] = "page2";
            } else {
                bar(2, 22.5);  // duplicate ts, later page wins
                bar(3, 23.0);
                bar(4, 24.0);
                body["next_cursor"] = nullptr;
            }
            body["data"] = rows;
            res.set_content(body.dump(), "application/json");
        });
        server.Get("/trades", [this](const httplib::Request&, httplib::Response& res) {
            ++hits;
            json body;
            json rows = json::array();
            json row;
            row["ts"] = kPanelStart + 750;
            row["price"] = 22.0;
            row["amount"] = 1.25;
            row["side"] = "SELL";
            rows.push_back(row);
            body["data"] = rows;
            body["next_cursor"] = nullptr;
            res.set_content(body.dump(), "application/json");
        });
        port = server.bind_to_any_port("127.0.0.1");
        thread = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }

    ~FixtureServer() {
        server.stop();
        thread.join();
    }

    RemoteSource source() const {
        RemoteOptions opts;
        opts.backoff_base_ms = 1;
        opts.timeout_sec = 5;
        return RemoteSource("http://127.0.0.1:" + std::to_string(port), opts);
    }
};

}  // namespace

TEST_CASE("RemoteSource: paginates, deduplicates and sorts candles") {
    FixtureServer fixture;
    auto source = fixture.source();
    const auto got = fetch_candles(source, "FTT", "USDT", kHourMs,
                                   {kPanelStart, kPanelStart + 5 * kHourMs});
    REQUIRE(got.size() == 5);
    CHECK(got[2].close == 22.5);  // later page superseded the duplicate
    for (std::size_t i = 1; i < got.size(); ++i) CHECK(got[i].ts > got[i - 1].ts);
    CHECK(fixture.hits.load() == 2);
}

TEST_CASE("RemoteSource: transient failures are retried with backoff") {
    FixtureServer fixture;
    fixture.failures_to_serve = 2;
    auto source = fixture.source();
    const auto got = fetch_candles(source, "FTT", "USDT", kHourMs,
                                   {kPanelStart, kPanelStart + 5 * kHourMs});
    CHECK(got.size() == 5);
    CHECK(fixture.hits.load() == 4);  // 2 failures + 2 good pages
}

TEST_CASE("RemoteSource: persistent failure surfaces NetworkError after retries") {
    FixtureServer fixture;
    fixture.failures_to_serve = 100;
    auto source = fixture.source();
    CHECK_THROWS_AS(fetch_candles(source, "FTT", "USDT", kHourMs,
                                  {kPanelStart, kPanelStart + kHourMs}),
                    NetworkError);
    CHECK(fixture.hits.load() == 4);  // initial attempt + 3 retries
}

TEST_CASE("RemoteSource: rejected symbol raises SymbolUnknown") {
    FixtureServer fixture;
    auto source = fixture.source();
    CHECK_THROWS_AS(fetch_candles(source, "NOPE", "USDT", kHourMs,
                                  {kPanelStart, kPanelStart + kHourMs}),
                    SymbolUnknown);
}

TEST_CASE("RemoteSource: malformed payloads raise SchemaError") {
    FixtureServer fixture;
    auto source = fixture.source();
    CHECK_THROWS_AS(fetch_candles(source, "GARBLED", "USDT", kHourMs,
                                  {kPanelStart, kPanelStart + kHourMs}),
                    SchemaError);
    CHECK_THROWS_AS(fetch_candles(source, "BADSHAPE", "USDT", kHourMs,
                                  {kPanelStart, kPanelStart + kHourMs}),
                    SchemaError);
}

TEST_CASE("RemoteSource: trade page round trip") {
    FixtureServer fixture;
    auto source = fixture.source();
    const auto got = fetch_trades(source, "FTT", "BUSD",
                                  {kPanelStart, kPanelStart + kHourMs});
    REQUIRE(got.size() == 1);
    CHECK(got[0].symbol == "FTT");
    CHECK(got[0].quote == "BUSD");
    CHECK(got[0].price == 22.0);
    CHECK(got[0].amount == 1.25);
    CHECK(got[0].side == Side::Sell);
}

TEST_CASE("fetch_trades: empty range rejected before any traffic") {
    FixtureServer fixture;
    auto source = fixture.source();
    CHECK_THROWS_AS(fetch_trades(source, "FTT", "BUSD", {kPanelStart, kPanelStart}),
                    InvalidParameter);
    CHECK(fixture.hits.load() == 0);
}
