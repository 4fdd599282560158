#include <chrono>
#include <thread>

#include <fmt/format.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "cryptonet/errors.hpp"
#include "cryptonet/market_source.hpp"

namespace cryptonet {

using nlohmann::json;

struct RemoteSource::Impl {
    std::string base_url;
    RemoteOptions options;
    std::unique_ptr<httplib::Client> client;

    explicit Impl(std::string url, RemoteOptions opts)
        : base_url(std::move(url)), options(opts) {
        client = std::make_unique<httplib::Client>(base_url);
        client->set_connection_timeout(options.timeout_sec, 0);
        client->set_read_timeout(options.timeout_sec, 0);
    }

    json get_json(const std::string& path, const httplib::Params& params) {
        if (options.rate_limit_ms > 0) {
            std::this_thread::sleep_for(std::chrono::milliseconds(options.rate_limit_ms));
        }
        int delay_ms = options.backoff_base_ms;
        std::string last_failure;
        for (int attempt = 0; attempt <= options.max_retries; ++attempt) {
            if (attempt > 0) {
                std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms));
                delay_ms *= 2;
            }
            auto res = client->Get(path, params, httplib::Headers{});
            if (!res) {
                last_failure = fmt::format("transport error: {}", httplib::to_string(res.error()));
                continue;
            }
            if (res->status >= 500) {
                last_failure = fmt::format("HTTP {}", res->status);
                continue;
            }
            if (res->status == 404 || res->status == 400) {
                throw SymbolUnknown(fmt::format("{}{}: HTTP {} ({})", base_url, path,
                                                res->status, res->body));
            }
            if (res->status != 200) {
                throw NetworkError(fmt::format("{}{}: unexpected HTTP {}", base_url, path,
                                               res->status));
            }
            json body = json::parse(res->body, nullptr, false);
            if (body.is_discarded()) {
                throw SchemaError(fmt::format("{}{}: response is not valid JSON", base_url,
                                              path));
            }
            return body;
        }
        throw NetworkError(fmt::format("{}{}: giving up after {} retries ({})", base_url, path,
                                       options.max_retries, last_failure));
    }
};

RemoteSource::RemoteSource(std::string base_url, RemoteOptions options)
    : impl_(std::make_unique<Impl>(std::move(base_url), options)) {}

RemoteSource::~RemoteSource() = default;

namespace {

double field_double(const json& row, const char* key, const std::string& context) {
    if (!row.contains(key) || !row[key].is_number()) {
        throw SchemaError(fmt::format("{}: missing numeric field '{}'", context, key));
    }
    return row[key].get<double>();
}

std::int64_t field_int(const json& row, const char* key, const std::string& context) {
    if (!row.contains(key) || !row[key].is_number_integer()) {
        throw SchemaError(fmt::format("{}: missing integer field '{}'", context, key));
    }
    return row[key].get<std::int64_t>();
}

std::optional<std::string> next_cursor_of(const json& body, const std::string& context) {
    if (!body.is_object() || !body.contains("data") || !body["data"].is_array()) {
        throw SchemaError(fmt::format("{}: payload must be an object with a 'data' array",
                                      context));
    }
    if (body.contains("next_cursor") && body["next_cursor"].is_string()) {
        return body["next_cursor"].get<std::string>();
    }
    return std::nullopt;
}

}  // namespace

Page<Candle> RemoteSource::candle_page(const std::string& symbol, const std::string& quote,
                                       std::int64_t interval_ms, TimeRange range,
                                       const std::optional<std::string>& cursor) {
    httplib::Params params{{"symbol", symbol},
                           {"quote", quote},
                           {"interval", fmt::format("{}", interval_ms)},
                           {"start", fmt::format("{}", range.start)},
                           {"end", fmt::format("{}", range.end)},
                           {"limit", fmt::format("{}", impl_->options.page_size)}};
    if (cursor) params.emplace("cursor", *cursor);
    const auto context = fmt::format("candles {}/{}", symbol, quote);
    const json body = impl_->get_json("/candles", params);
    Page<Candle> page;
    page.next_cursor = next_cursor_of(body, context);
    for (const auto& row : body["data"]) {
        Candle c;
        c.symbol = symbol;
        c.quote = quote;
        c.ts = field_int(row, "ts", context);
        c.open = field_double(row, "open", context);
        c.high = field_double(row, "high", context);
        c.low = field_double(row, "low", context);
        c.close = field_double(row, "close", context);
        c.volume = field_double(row, "volume", context);
        page.items.push_back(std::move(c));
    }
    return page;
}

Page<TradeRecord> RemoteSource::trade_page(const std::string& symbol, const std::string& quote,
                                           TimeRange range,
                                           const std::optional<std::string>& cursor) {
    httplib::Params params{{"symbol", symbol},
                           {"quote", quote},
                           {"start", fmt::format("{}", range.start)},
                           {"end", fmt::format("{}", range.end)},
                           {"limit", fmt::format("{}", impl_->options.page_size)}};
    if (cursor) params.emplace("cursor", *cursor);
    const auto context = fmt::format("trades {}/{}", symbol, quote);
    const json body = impl_->get_json("/trades", params);
    Page<TradeRecord> page;
    page.next_cursor = next_cursor_of(body, context);
    for (const auto& row : body["data"]) {
        TradeRecord t;
        t.symbol = symbol;
        t.quote = quote;
        t.ts = field_int(row, "ts", context);
        t.price = field_double(row, "price", context);
        t.amount = field_double(row, "amount", context);
        if (!row.contains("side") || !row["side"].is_string()) {
            throw SchemaError(fmt::format("{}: missing string field 'side'", context));
        }
        t.side = parse_side(row["side"].get<std::string>());
        page.items.push_back(std::move(t));
    }
    return page;
}

}  // namespace cryptonet
