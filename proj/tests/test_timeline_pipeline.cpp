#include <filesystem>
#include <fstream>
#include <map>
#include <random>

#include <doctest.h>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "cryptonet/candle_store.hpp"
#include "cryptonet/csv.hpp"
#include "cryptonet/errors.hpp"
#include "cryptonet/hash.hpp"
#include "cryptonet/pipeline.hpp"
#include "cryptonet/time_utils.hpp"
#include "cryptonet/timeline.hpp"
#include "test_support.hpp"

using namespace cryptonet;
using testsup::kHourMs;
using testsup::kPanelStart;
using testsup::make_candle;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("cryptonet_pipe_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    out << content;
}

// 5 assets x 72 hourly bars written through the store layer.
void build_store(const std::filesystem::path& store_dir, int assets = 5, int bars = 72) {
    const CandleStore store(store_dir);
    std::mt19937 rng(97);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (int i = 0; i < assets; ++i) {
        const std::string symbol = "S" + std::to_string(i);
        std::vector<Candle> candles;
        double close = 40.0 + 5.0 * i;
        for (int t = 0; t < bars; ++t) {
            close *= std::exp(0.01 * noise(rng));
            candles.push_back(make_candle(symbol, kPanelStart + t * kHourMs, close));
        }
        persist_candles(candles, store.candle_path(symbol, "USDT", kHourMs));
    }
}

RunConfig base_config(const TempDir& dir) {
    RunConfig config;
    config.store_dir = (dir.path / "store").string();
    config.out_dir = (dir.path / "out").string();
    config.symbols = {"S0", "S1", "S2", "S3", "S4"};
    config.from_ts = kPanelStart;
    config.to_ts = kPanelStart + 72 * kHourMs;
    config.focus = {"S0", "S1"};
    std::filesystem::create_directories(config.store_dir);
    build_store(config.store_dir);
    return config;
}

}  // namespace

TEST_CASE("timeline: validation rejects duplicate labels and disorder") {
    EventTimeline t;
    t.entries = {{"a", 100, ""}, {"a", 200, ""}};
    CHECK_THROWS_AS(t.validate(), ValidationError);
    t.entries = {{"a", 200, ""}, {"b", 100, ""}};
    CHECK_THROWS_AS(t.validate(), ValidationError);
    t.entries = {{"a", 100, ""}, {"b", 200, ""}};
    CHECK_NOTHROW(t.validate());
}

TEST_CASE("timeline: loads the CSV schema with commas in descriptions") {
    TempDir dir;
    const auto path = dir.path / "events.csv";
    write_file(path,
               "label,ts,description\n"
               "a,2022-05-07T22:00:00Z,first event\n"
               "b,2022-11-02T14:44:00Z,second event, with a comma\n");
    const auto timeline = load_timeline(path);
    REQUIRE(timeline.entries.size() == 2);
    CHECK(timeline.entries[0].ts == parse_utc_ms("2022-05-07T22:00"));
    CHECK(timeline.entries[1].description == "second event, with a comma");
}

TEST_CASE("annotate: event lands in its containing hourly bucket") {
    TempDir dir;
    const auto input = dir.path / "series.csv";
    const std::int64_t t0 = parse_utc_ms("2022-11-06T14:00");
    write_file(input, fmt::format("ts,value\n{},1\n{},2\n{},3\n", t0, t0 + kHourMs,
                                  t0 + 2 * kHourMs));
    EventTimeline timeline;
    timeline.entries = {{"c", parse_utc_ms("2022-11-06T15:47"), "liquidation announcement"}};
    const auto annotated = annotate_csv(input, timeline);
    CHECK(annotated == fmt::format("ts,value,event\n{},1,\n{},2,c\n{},3,\n", t0, t0 + kHourMs,
                                   t0 + 2 * kHourMs));
}

TEST_CASE("annotate: no events leaves the column empty") {
    TempDir dir;
    const auto input = dir.path / "series.csv";
    write_file(input, fmt::format("ts,value\n{},1\n{},2\n", kPanelStart,
                                  kPanelStart + kHourMs));
    EventTimeline timeline;
    timeline.entries = {{"z", kPanelStart + 100 * kHourMs, "far away"}};
    const auto annotated = annotate_csv(input, timeline);
    CHECK(annotated.find(",event\n") != std::string::npos);
    CHECK(annotated.find(",z") == std::string::npos);
}

TEST_CASE("annotate: two events in one bucket join with a semicolon in time order") {
    TempDir dir;
    const auto input = dir.path / "series.csv";
    write_file(input, fmt::format("ts,value\n{},1\n{},2\n", kPanelStart,
                                  kPanelStart + kHourMs));
    EventTimeline timeline;
    timeline.entries = {{"x", kPanelStart + 600'000, "first"},
                        {"y", kPanelStart + 1'200'000, "second"}};
    const auto annotated = annotate_csv(input, timeline);
    CHECK(annotated.find(fmt::format("{},1,x;y\n", kPanelStart)) != std::string::npos);
}

TEST_CASE("annotate: single row needs an explicit width") {
    TempDir dir;
    const auto input = dir.path / "series.csv";
    write_file(input, fmt::format("ts,value\n{},1\n", kPanelStart));
    EventTimeline timeline;
    timeline.entries = {{"a", kPanelStart + 1, ""}};
    CHECK_THROWS_AS(annotate_csv(input, timeline), InvalidParameter);
    CHECK(annotate_csv(input, timeline, kHourMs)
              .find(fmt::format("{},1,a\n", kPanelStart)) != std::string::npos);
}

TEST_CASE("run_pipeline: synthetic 5-asset 72-hour run writes 6 hashed outputs") {
    TempDir dir;
    const RunConfig config = base_config(dir);
    const auto manifest = run_pipeline(config);

    REQUIRE(manifest.outputs.size() == 6);
    const std::vector<std::string> expected = {
        "rescaled.csv",           "correlation_series.csv", "centrality_scores.csv",
        "centrality_bands.csv",   "bhr.csv",                "bhr_summary.json"};
    for (const auto& name : expected) {
        REQUIRE(manifest.outputs.contains(name));
        const auto path = std::filesystem::path(config.out_dir) / name;
        REQUIRE(std::filesystem::exists(path));
        CHECK(std::filesystem::file_size(path) > 0);
    }
    CHECK(manifest.window_failures.empty());

    // Manifest completeness: every non-manifest file in out_dir is listed,
    // and each hash matches a recomputation from the bytes on disk.
    for (const auto& entry : std::filesystem::directory_iterator(config.out_dir)) {
        const auto name = entry.path().filename().string();
        if (name == "manifest.json") continue;
        REQUIRE(manifest.outputs.contains(name));
        CHECK(manifest.outputs.at(name) ==
              fmt::format("fnv1a64:{:016x}", fnv1a64(read_file(entry.path()))));
    }
}

TEST_CASE("run_pipeline: reruns are byte-identical") {
    TempDir dir;
    RunConfig config = base_config(dir);
    run_pipeline(config);
    std::map<std::string, std::string> first;
    for (const auto& entry : std::filesystem::directory_iterator(config.out_dir)) {
        first[entry.path().filename().string()] = read_file(entry.path());
    }
    run_pipeline(config);
    std::map<std::string, std::string> second;
    for (const auto& entry : std::filesystem::directory_iterator(config.out_dir)) {
        second[entry.path().filename().string()] = read_file(entry.path());
    }
    CHECK(first == second);
}

TEST_CASE("run_pipeline: trade tape adds the imbalance output") {
    TempDir dir;
    RunConfig config = base_config(dir);
    const auto tape_path = dir.path / "tape.csv";
    std::vector<TradeRecord> tape = {
        {"S0", "BUSD", kPanelStart + 30'000, 20.0, 2.0, Side::Sell},
        {"S0", "BUSD", kPanelStart + 90'000, 21.0, 1.0, Side::Buy},
    };
    persist_trades(tape, tape_path);
    config.trades_path = tape_path.string();
    config.bucket = Bucket::Minute;
    const auto manifest = run_pipeline(config);
    CHECK(manifest.outputs.size() == 7);
    REQUIRE(manifest.outputs.contains("imbalance.csv"));
    const auto body = read_file(std::filesystem::path(config.out_dir) / "imbalance.csv");
    CHECK(body.find(fmt::format("{},0,40,40\n", kPanelStart)) != std::string::npos);
    CHECK(manifest.inputs.contains(config.trades_path));
}

TEST_CASE("run_pipeline: timeline adds annotated outputs") {
    TempDir dir;
    RunConfig config = base_config(dir);
    const auto timeline_path = dir.path / "events.csv";
    write_file(timeline_path, fmt::format("label,ts,description\na,{},midpoint\n",
                                          kPanelStart + 36 * kHourMs + 1'000));
    config.timeline_path = timeline_path.string();
    const auto manifest = run_pipeline(config);
    REQUIRE(manifest.outputs.contains("correlation_series_annotated.csv"));
    const auto body = read_file(std::filesystem::path(config.out_dir) /
                                "correlation_series_annotated.csv");
    CHECK(body.find(",a\n") != std::string::npos);
}

TEST_CASE("run_pipeline: corrupted candle row halts naming stage and row") {
    TempDir dir;
    RunConfig config = base_config(dir);
    // Corrupt one store row by hand: low above high.
    const auto store_file = CandleStore(config.store_dir).candle_path("S2", "USDT", kHourMs);
    auto table = csv::read_table(store_file);
    auto body = std::string(kCandleCsvHeader) + "\n";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        auto row = table.rows[i];
        if (i == 4) row[5] = "99999";  // low
        for (std::size_t c = 0; c < row.size(); ++c) {
            body += (c ? "," : "") + row[c];
        }
        body += '\n';
    }
    write_file(store_file, body);
    try {
        run_pipeline(config);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        const std::string what = e.what();
        CHECK(what.find("market-data") != std::string::npos);
        CHECK(what.find("row 6") != std::string::npos);  // row 5 + header offset
    }
}

TEST_CASE("run_pipeline: config validation failures") {
    TempDir dir;
    RunConfig config = base_config(dir);
    config.window = 1;
    CHECK_THROWS_AS(run_pipeline(config), ConfigError);
    config.window = 24;
    config.store_dir = (dir.path / "missing").string();
    CHECK_THROWS_AS(run_pipeline(config), ConfigError);
}

TEST_CASE("load_run_config: JSON round trip") {
    TempDir dir;
    const auto path = dir.path / "run.json";
    write_file(path, R"({
      "store_dir": "store",
      "out_dir": "out",
      "symbols": ["FTT", "BNB"],
      "quote": "USDT",
      "from": "2022-01-01",
      "to": "2022-12-01T01:00:00Z",
      "interval": "1h",
      "window": 24,
      "step": 1,
      "theta": 0.1,
      "transform": "abs",
      "return_kind": "simple",
      "adjacency": "binary",
      "bucket": "minute",
      "focus": ["FTT"]
    })");
    const auto config = load_run_config(path);
    CHECK(config.symbols == std::vector<std::string>{"FTT", "BNB"});
    CHECK(config.from_ts == parse_utc_ms("2022-01-01"));
    CHECK(config.to_ts == parse_utc_ms("2022-12-01T01:00:00Z"));
    CHECK(config.theta == 0.1);
    CHECK(config.transform == SimilarityTransform::Abs);
    CHECK(config.return_kind == ReturnKind::Simple);
    CHECK(config.adjacency == AdjacencyMode::Binary);
    CHECK(config.bucket == Bucket::Minute);
    CHECK(config.effective_theta() == 0.1);
    RunConfig defaulted;
    defaulted.window = 24;
    CHECK(defaulted.effective_theta() == 8.0);
}

TEST_CASE("time parsing: formats and labels") {
    CHECK(parse_utc_ms("2022-01-01") == 1'640'995'200'000);
    CHECK(parse_utc_ms("2022-01-01T00:00:00Z") == 1'640'995'200'000);
    CHECK(parse_utc_ms("2022-11-08 02:48") == parse_utc_ms("2022-11-08T02:48:00"));
    CHECK(parse_utc_ms("1640995200000") == 1'640'995'200'000);
    CHECK(format_utc_ms(1'640'995'200'000) == "2022-01-01T00:00:00Z");
    CHECK(parse_interval("1h") == kHourMs);
    CHECK(parse_interval("1m") == 60'000);
    CHECK(parse_interval("250ms") == 250);
    CHECK(interval_label(kHourMs) == "1h");
    CHECK_THROWS_AS(parse_utc_ms("yesterday"), InvalidParameter);
    CHECK_THROWS_AS(parse_interval("2fortnights"), InvalidParameter);
}
