// cryptonet CLI: ingest candles/trades, build rolling correlation networks,
// TMFG centrality series, flow imbalance and buy-and-hold reports.
//
// Exit codes: 0 success, 2 configuration error, 3 data error,
// 4 numeric-stage error.

#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cryptonet/bhr.hpp"
#include "cryptonet/candle_store.hpp"
#include "cryptonet/centrality.hpp"
#include "cryptonet/csv.hpp"
#include "cryptonet/errors.hpp"
#include "cryptonet/ewcorr.hpp"
#include "cryptonet/exports.hpp"
#include "cryptonet/graph_verify.hpp"
#include "cryptonet/market_source.hpp"
#include "cryptonet/pipeline.hpp"
#include "cryptonet/price_panel.hpp"
#include "cryptonet/time_utils.hpp"
#include "cryptonet/timeline.hpp"
#include "cryptonet/tmfg.hpp"
#include "cryptonet/version.hpp"

using namespace cryptonet;

namespace {

std::vector<std::string> split_symbols(const std::string& csv_list) {
    std::vector<std::string> out;
    for (auto& field : csv::split(csv_list)) {
        if (!field.empty()) out.push_back(std::move(field));
    }
    return out;
}

std::string default_store() {
    if (const char* env = std::getenv("CRYPTONET_DATA_DIR")) return env;
    return "";
}

// Flags shared by the analysis subcommands.
struct CommonOpts {
    std::string store = default_store();
    std::string symbols;
    std::string quote = "USDT";
    std::string from;
    std::string to;
    std::string interval = "1h";
    std::string out = ".";
    int window = 24;
    int step = 1;
    double theta = 0.0;  // 0 -> window / 3
    unsigned threads = 0;

    void add_range(CLI::App& cmd) {
        cmd.add_option("--from", from, "range start, ISO-8601 UTC or epoch ms")->required();
        cmd.add_option("--to", to, "range end (exclusive), ISO-8601 UTC or epoch ms")
            ->required();
    }
    void add_store(CLI::App& cmd) {
        cmd.add_option("--store", store,
                       "candle store directory (env CRYPTONET_DATA_DIR)");
        cmd.add_option("--symbols", symbols, "comma-separated asset symbols")->required();
        cmd.add_option("--quote", quote, "quote currency of the panel");
        cmd.add_option("--interval", interval, "bar interval (1m, 1h, 1d)");
    }
    void add_window(CLI::App& cmd, bool with_step) {
        cmd.add_option("--window", window, "rolling window length in bars");
        if (with_step) cmd.add_option("--step", step, "window step in bars");
        cmd.add_option("--theta", theta,
                       "exponential decay parameter (default: window / 3)");
        cmd.add_option("--threads", threads, "worker threads (0 = hardware)");
    }
    void add_out(CLI::App& cmd) {
        cmd.add_option("--out", out, "output directory");
    }

    double effective_theta() const {
        return theta > 0.0 ? theta : static_cast<double>(window) / 3.0;
    }
    PricePanel load(std::vector<std::string>* dropped = nullptr,
                    std::int64_t extra_bars = 0) const {
        if (store.empty()) {
            throw ConfigError("no candle store given (--store or CRYPTONET_DATA_DIR)");
        }
        const auto interval_ms = parse_interval(interval);
        const TimeRange range{parse_utc_ms(from),
                              parse_utc_ms(to) + extra_bars * interval_ms};
        return load_panel(CandleStore(store), split_symbols(symbols), quote, interval_ms,
                          range, dropped);
    }
    void write(const std::string& name, const std::string& content) const {
        csv::write_file_atomic(std::filesystem::path(out) / name, content);
        fmt::print("wrote {}\n", (std::filesystem::path(out) / name).string());
    }
};

int cmd_fetch(const CommonOpts& opts, const std::string& source_location, int rate_limit_ms,
              bool trades) {
    auto source = open_source(source_location, rate_limit_ms);
    const TimeRange range{parse_utc_ms(opts.from), parse_utc_ms(opts.to)};
    const auto interval_ms = parse_interval(opts.interval);
    const CandleStore store(opts.out);
    for (const auto& symbol : split_symbols(opts.symbols)) {
        if (trades) {
            const auto tape = fetch_trades(*source, symbol, opts.quote, range);
            const auto rows = persist_trades(tape, store.trade_path(symbol, opts.quote));
            fmt::print("{}: fetched {} trades, store has {} rows\n", symbol, tape.size(),
                       rows);
        } else {
            const auto candles = fetch_candles(*source, symbol, opts.quote, interval_ms,
                                               range);
            const auto rows = persist_candles(
                candles, store.candle_path(symbol, opts.quote, interval_ms));
            fmt::print("{}: fetched {} candles, store has {} rows\n", symbol, candles.size(),
                       rows);
        }
    }
    return 0;
}

int cmd_panel(const CommonOpts& opts) {
    std::vector<std::string> dropped;
    const auto panel = opts.load(&dropped);
    opts.write("panel.csv", panel_csv(panel));
    opts.write("panel_mask.csv", panel_mask_csv(panel));
    for (const auto& s : dropped) fmt::print("dropped {} (no data in range)\n", s);
    return 0;
}

int cmd_corr(const CommonOpts& opts, const std::string& focus_csv,
             const std::string& return_kind, bool per_window) {
    const auto panel = opts.load();
    const auto returns = to_returns(panel, parse_return_kind(return_kind));
    auto focus = split_symbols(focus_csv);
    if (focus.empty()) focus = panel.symbols;

    CorrelationSeriesBuilder builder(focus);
    std::string long_format = "window_end_ts,sym_i,sym_j,rho\n";
    rolling_corr_foreach(
        returns, opts.window, opts.step, opts.effective_theta(),
        [&](WeightedCorrelationMatrix&& mat) {
            builder.add(mat);
            if (per_window) {
                opts.write(fmt::format("corr_{}.csv", mat.window_end_ts),
                           correlation_matrix_csv(mat));
            } else {
                long_format += correlation_matrix_rows(mat);
            }
        },
        opts.threads);
    if (!per_window) opts.write("correlation_matrices.csv", long_format);
    opts.write("correlation_series.csv", correlation_series_csv(builder.finish()));
    return 0;
}

int cmd_tmfg(const CommonOpts& opts, const std::string& transform_name,
             const std::string& return_kind, int step_override) {
    const auto panel = opts.load();
    const auto returns = to_returns(panel, parse_return_kind(return_kind));
    const auto transform = parse_similarity_transform(transform_name);
    const int step = step_override > 0 ? step_override : opts.window;  // non-overlapping

    std::vector<std::pair<std::int64_t, FilteredGraph>> graphs;
    std::vector<std::tuple<std::int64_t, FilteredGraph, VerificationReport>> sidecar;
    rolling_corr_foreach(
        returns, opts.window, step, opts.effective_theta(),
        [&](WeightedCorrelationMatrix&& mat) {
            if (mat.symbols.size() < 4) {
                fmt::print(stderr, "window {}: only {} usable assets, skipping\n",
                           mat.window_end_ts, mat.symbols.size());
                return;
            }
            auto graph = build_tmfg(to_similarity(mat, transform));
            auto report = verify(graph);
            if (!report.all_pass()) {
                fmt::print(stderr, "window {}: verification FAILED: {}\n", mat.window_end_ts,
                           report.summary());
            }
            graphs.emplace_back(mat.window_end_ts, graph);
            sidecar.emplace_back(mat.window_end_ts, std::move(graph), std::move(report));
        },
        opts.threads);
    opts.write("tmfg_edges.csv", tmfg_edges_csv(graphs));
    opts.write("tmfg_sidecar.json", tmfg_sidecar_json(sidecar));
    return 0;
}

int cmd_centrality(const CommonOpts& opts, const std::string& transform_name,
                   const std::string& focus_csv, const std::string& return_kind,
                   bool binary_adjacency) {
    const auto panel = opts.load();
    const auto returns = to_returns(panel, parse_return_kind(return_kind));
    const auto windows = centrality_over_windows(
        returns, opts.window, opts.effective_theta(),
        parse_similarity_transform(transform_name),
        binary_adjacency ? AdjacencyMode::Binary : AdjacencyMode::Weighted, opts.threads);

    std::vector<CentralityVector> ok_vectors;
    for (const auto& w : windows) {
        if (w.ok() && w.centrality) {
            ok_vectors.push_back(*w.centrality);
        } else {
            fmt::print(stderr, "window {}: {}\n", w.window_end_ts, w.failure);
        }
    }
    opts.write("centrality_scores.csv", centrality_csv(windows));
    if (!ok_vectors.empty()) {
        const auto focus = split_symbols(focus_csv);
        const auto bands = percentile_bands(ok_vectors, focus);
        opts.write("centrality_bands.csv", centrality_bands_csv(bands));
        if (!focus.empty()) opts.write("centrality_focus.csv", centrality_focus_csv(bands));
    }
    return 0;
}

int cmd_imbalance(const std::string& trades_path, const std::string& bucket_name, bool dense,
                  bool allow_empty, int peaks, const CommonOpts& opts) {
    const auto tape = load_trades(trades_path);
    const auto bucket = parse_bucket(bucket_name);
    const auto series = compute_imbalance(tape, bucket, {dense, allow_empty});
    opts.write("imbalance.csv", imbalance_csv(series));
    if (peaks > 0 && series.size() > 0) {
        fmt::print("top {} buckets by |imbalance| ({}):\n", peaks, bucket_label(bucket));
        for (const auto& peak : peak_report(series, peaks)) {
            fmt::print("  {}  {}\n", format_utc_ms(peak.ts),
                       format_units(peak.imbalance_units));
        }
    }
    return 0;
}

int cmd_bhr(const CommonOpts& opts) {
    // --from/--to are the two endpoint bars; load one extra bar so the end
    // timestamp sits on the panel grid.
    const auto panel = opts.load(nullptr, 1);
    const auto report = buy_and_hold(panel, parse_utc_ms(opts.from), parse_utc_ms(opts.to));
    opts.write("bhr.csv", bhr_csv(report));
    opts.write("bhr_summary.json", bhr_summary_json(report));
    fmt::print("median {:.4f}, p25 {:.4f}, p75 {:.4f}, {} dropped\n", report.median,
               report.p25, report.p75, report.dropped.size());
    return 0;
}

int cmd_run(const RunConfig& config) {
    const auto manifest = run_pipeline(config);
    fmt::print("{} outputs -> {}/manifest.json\n", manifest.outputs.size(), config.out_dir);
    for (const auto& failure : manifest.window_failures) {
        fmt::print(stderr, "centrality {}\n", failure);
    }
    return 0;
}

int cmd_annotate(const std::string& input, const std::string& timeline_path,
                 const std::string& out, const std::string& bucket_name,
                 std::int64_t bucket_ms) {
    std::int64_t width = bucket_ms;
    if (width <= 0 && !bucket_name.empty()) {
        width = static_cast<std::int64_t>(parse_bucket(bucket_name));
    }
    annotate_csv_file(input, load_timeline(timeline_path), out, width);
    fmt::print("wrote {}\n", out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cryptocurrency dependency-network analysis pipeline"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CommonOpts opts;

    // fetch
    auto* fetch = app.add_subcommand("fetch", "download candles or trades into a store");
    std::string source_location;
    int rate_limit_ms = -1;
    bool fetch_trades_flag = false;
    fetch->add_option("--source", source_location,
                      "http(s) endpoint base URL or archive directory")->required();
    fetch->add_option("--rate-limit-ms", rate_limit_ms,
                      "delay between page requests (env CRYPTONET_RATE_LIMIT_MS)");
    fetch->add_flag("--trades", fetch_trades_flag, "fetch the trade tape instead of candles");
    fetch->add_option("--symbols", opts.symbols, "comma-separated asset symbols")->required();
    fetch->add_option("--quote", opts.quote, "quote currency");
    fetch->add_option("--interval", opts.interval, "bar interval (1m, 1h, 1d)");
    opts.add_range(*fetch);
    fetch->add_option("--out", opts.out, "destination store directory")->required();

    // panel
    auto* panel = app.add_subcommand("panel", "build an aligned close-price panel");
    opts.add_store(*panel);
    opts.add_range(*panel);
    opts.add_out(*panel);

    // corr
    auto* corr = app.add_subcommand("corr",
                                    "rolling exponentially weighted correlations");
    std::string focus_csv;
    std::string return_kind = "log";
    bool per_window = false;
    opts.add_store(*corr);
    opts.add_range(*corr);
    opts.add_window(*corr, true);
    opts.add_out(*corr);
    corr->add_option("--focus", focus_csv, "focus symbols for the average series");
    corr->add_option("--return-kind", return_kind, "log or simple");
    corr->add_flag("--per-window", per_window, "one CSV per window instead of long format");

    // tmfg
    auto* tmfg = app.add_subcommand("tmfg", "build filtered dependency graphs per window");
    std::string transform_name = "square";
    int tmfg_step = 0;
    opts.add_store(*tmfg);
    opts.add_range(*tmfg);
    opts.add_window(*tmfg, false);
    tmfg->add_option("--step", tmfg_step, "window step (default: window, non-overlapping)");
    opts.add_out(*tmfg);
    tmfg->add_option("--transform", transform_name, "similarity: square, abs or shift");
    tmfg->add_option("--return-kind", return_kind, "log or simple");

    // centrality
    auto* centrality = app.add_subcommand("centrality",
                                          "eigenvector centrality over non-overlapping windows");
    bool binary_adjacency = false;
    opts.add_store(*centrality);
    opts.add_range(*centrality);
    opts.add_window(*centrality, false);
    opts.add_out(*centrality);
    centrality->add_option("--transform", transform_name, "similarity: square, abs or shift");
    centrality->add_option("--focus", focus_csv, "focus symbols for the percentile bands");
    centrality->add_option("--return-kind", return_kind, "log or simple");
    centrality->add_flag("--binary-adjacency", binary_adjacency,
                         "unweighted adjacency instead of similarity weights");

    // imbalance
    auto* imbalance = app.add_subcommand("imbalance",
                                         "signed buy/sell notional flow per bucket");
    std::string trades_path;
    std::string bucket_name = "minute";
    bool dense = false;
    bool allow_empty = false;
    int peaks = 0;
    imbalance->add_option("--trades", trades_path, "trade CSV path")->required();
    imbalance->add_option("--bucket", bucket_name, "minute or hour");
    imbalance->add_flag("--dense", dense, "emit explicit zero buckets");
    imbalance->add_flag("--allow-empty", allow_empty, "empty tape gives an empty series");
    imbalance->add_option("--peaks", peaks, "print the top-k buckets by |imbalance|");
    opts.add_out(*imbalance);

    // bhr
    auto* bhr = app.add_subcommand("bhr", "buy-and-hold returns between two bars");
    opts.add_store(*bhr);
    opts.add_range(*bhr);
    opts.add_out(*bhr);

    // run
    auto* run = app.add_subcommand("run", "full pipeline with manifest");
    std::string config_path;
    std::string timeline_path;
    std::string adjacency_name = "weighted";
    run->add_option("--config", config_path, "run configuration JSON");
    run->add_option("--store", opts.store, "candle store directory");
    run->add_option("--symbols", opts.symbols, "comma-separated asset symbols");
    run->add_option("--quote", opts.quote, "quote currency");
    run->add_option("--interval", opts.interval, "bar interval");
    run->add_option("--from", opts.from, "range start");
    run->add_option("--to", opts.to, "range end (exclusive)");
    run->add_option("--window", opts.window, "rolling window length");
    run->add_option("--step", opts.step, "correlation window step");
    run->add_option("--theta", opts.theta, "decay parameter (default window / 3)");
    run->add_option("--transform", transform_name, "similarity transform");
    run->add_option("--return-kind", return_kind, "log or simple");
    run->add_option("--adjacency", adjacency_name, "weighted or binary");
    run->add_option("--bucket", bucket_name, "imbalance bucket size");
    run->add_option("--focus", focus_csv, "focus symbols");
    run->add_option("--trades", trades_path, "trade CSV for the imbalance branch");
    run->add_option("--timeline", timeline_path, "event timeline CSV for annotation");
    run->add_option("--threads", opts.threads, "worker threads");
    run->add_option("--out", opts.out, "output directory");

    // annotate
    auto* annotate = app.add_subcommand("annotate", "add an event column to a series CSV");
    std::string annotate_input, annotate_out, annotate_bucket;
    std::int64_t annotate_bucket_ms = 0;
    annotate->add_option("--input", annotate_input, "timestamped CSV to annotate")->required();
    annotate->add_option("--timeline", timeline_path, "event timeline CSV")->required();
    annotate->add_option("--out", annotate_out, "annotated CSV path")->required();
    annotate->add_option("--bucket", annotate_bucket, "row bucket size: minute or hour");
    annotate->add_option("--bucket-ms", annotate_bucket_ms, "row bucket size in ms");

    try {
        app.parse(argc, argv);

        if (fetch->parsed()) return cmd_fetch(opts, source_location, rate_limit_ms,
                                              fetch_trades_flag);
        if (panel->parsed()) return cmd_panel(opts);
        if (corr->parsed()) return cmd_corr(opts, focus_csv, return_kind, per_window);
        if (tmfg->parsed()) return cmd_tmfg(opts, transform_name, return_kind, tmfg_step);
        if (centrality->parsed()) {
            return cmd_centrality(opts, transform_name, focus_csv, return_kind,
                                  binary_adjacency);
        }
        if (imbalance->parsed()) {
            return cmd_imbalance(trades_path, bucket_name, dense, allow_empty, peaks, opts);
        }
        if (bhr->parsed()) return cmd_bhr(opts);
        if (run->parsed()) {
            // Precedence: explicit flag > config file > built-in default.
            RunConfig config;
            if (!config_path.empty()) config = load_run_config(config_path);
            const auto given = [&](const char* flag) { return run->count(flag) > 0; };
            if (given("--store") || config.store_dir.empty()) config.store_dir = opts.store;
            if (given("--trades")) config.trades_path = trades_path;
            if (given("--timeline")) config.timeline_path = timeline_path;
            if (given("--symbols")) config.symbols = split_symbols(opts.symbols);
            if (given("--focus")) config.focus = split_symbols(focus_csv);
            if (given("--quote")) config.quote = opts.quote;
            if (given("--interval")) config.interval_ms = parse_interval(opts.interval);
            if (given("--from")) config.from_ts = parse_utc_ms(opts.from);
            if (given("--to")) config.to_ts = parse_utc_ms(opts.to);
            if (given("--window")) config.window = opts.window;
            if (given("--step")) config.step = opts.step;
            if (given("--theta")) config.theta = opts.theta;
            if (given("--return-kind")) config.return_kind = parse_return_kind(return_kind);
            if (given("--transform")) {
                config.transform = parse_similarity_transform(transform_name);
            }
            if (given("--adjacency")) {
                if (adjacency_name != "binary" && adjacency_name != "weighted") {
                    throw ConfigError("adjacency must be weighted or binary");
                }
                config.adjacency = adjacency_name == "binary" ? AdjacencyMode::Binary
                                                              : AdjacencyMode::Weighted;
            }
            if (given("--bucket")) config.bucket = parse_bucket(bucket_name);
            if (given("--threads")) config.threads = opts.threads;
            if (given("--out") || config.out_dir.empty()) config.out_dir = opts.out;
            return cmd_run(config);
        }
        if (annotate->parsed()) {
            return cmd_annotate(annotate_input, timeline_path, annotate_out, annotate_bucket,
                                annotate_bucket_ms);
        }
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ConfigError& e) {
        fmt::print(stderr, "config error: {}\n", e.what());
        return 2;
    } catch (const DataError& e) {
        fmt::print(stderr, "data error: {}\n", e.what());
        return 3;
    } catch (const NumericError& e) {
        fmt::print(stderr, "numeric error: {}\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    }
}
