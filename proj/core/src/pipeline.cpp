#include "cryptonet/pipeline.hpp"

#include <fstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "cryptonet/bhr.hpp"
#include "cryptonet/candle_store.hpp"
#include "cryptonet/csv.hpp"
#include "cryptonet/errors.hpp"
#include "cryptonet/exports.hpp"
#include "cryptonet/hash.hpp"
#include "cryptonet/price_panel.hpp"
#include "cryptonet/time_utils.hpp"
#include "cryptonet/timeline.hpp"
#include "cryptonet/version.hpp"

namespace cryptonet {

using ordered_json = nlohmann::ordered_json;

double RunConfig::effective_theta() const {
    return theta > 0.0 ? theta : static_cast<double>(window) / 3.0;
}

void RunConfig::validate() const {
    if (store_dir.empty()) throw ConfigError("run config needs a store_dir");
    if (!std::filesystem::exists(store_dir)) {
        throw ConfigError(fmt::format("store_dir '{}' does not exist", store_dir));
    }
    if (!trades_path.empty() && !std::filesystem::exists(trades_path)) {
        throw ConfigError(fmt::format("trades_path '{}' does not exist", trades_path));
    }
    if (!timeline_path.empty() && !std::filesystem::exists(timeline_path)) {
        throw ConfigError(fmt::format("timeline_path '{}' does not exist", timeline_path));
    }
    if (symbols.empty()) throw ConfigError("run config needs at least one symbol");
    if (from_ts >= to_ts) throw ConfigError("run config needs from < to");
    if (interval_ms <= 0) throw ConfigError("interval must be positive");
    if (window < 2) throw ConfigError("window must be >= 2");
    if (step < 1) throw ConfigError("step must be >= 1");
    if (out_dir.empty()) throw ConfigError("run config needs an out_dir");
}

namespace {

ordered_json config_json(const RunConfig& c) {
    ordered_json j;
    j["store_dir"] = c.store_dir;
    j["trades_path"] = c.trades_path;
    j["timeline_path"] = c.timeline_path;
    j["symbols"] = c.symbols;
    j["quote"] = c.quote;
    j["from_ts"] = c.from_ts;
    j["to_ts"] = c.to_ts;
    j["interval_ms"] = c.interval_ms;
    j["window"] = c.window;
    j["step"] = c.step;
    j["theta"] = c.effective_theta();
    j["return_kind"] = c.return_kind == ReturnKind::Log ? "log" : "simple";
    j["transform"] = similarity_transform_label(c.transform);
    j["adjacency"] = c.adjacency == AdjacencyMode::Weighted ? "weighted" : "binary";
    j["bucket"] = bucket_label(c.bucket);
    j["focus"] = c.focus.empty() ? c.symbols : c.focus;
    j["out_dir"] = c.out_dir;
    return j;
}

template <typename Fn>
auto stage(const std::string& name, Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        throw ConfigError(fmt::format("stage {}: {}", name, e.what()));
    } catch (const DataError& e) {
        throw DataError(fmt::format("stage {}: {}", name, e.what()));
    } catch (const NumericError& e) {
        throw NumericError(fmt::format("stage {}: {}", name, e.what()));
    }
}

}  // namespace

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot open config '{}'", path.string()));
    const auto body = nlohmann::json::parse(in, nullptr, false);
    if (body.is_discarded() || !body.is_object()) {
        throw ConfigError(fmt::format("'{}' is not a JSON object", path.string()));
    }
    RunConfig c;
    const auto get_str = [&](const char* key, std::string& target) {
        if (body.contains(key)) target = body[key].get<std::string>();
    };
    get_str("store_dir", c.store_dir);
    get_str("trades_path", c.trades_path);
    get_str("timeline_path", c.timeline_path);
    get_str("quote", c.quote);
    get_str("out_dir", c.out_dir);
    if (body.contains("symbols")) c.symbols = body["symbols"].get<std::vector<std::string>>();
    if (body.contains("focus")) c.focus = body["focus"].get<std::vector<std::string>>();
    if (body.contains("from")) c.from_ts = parse_utc_ms(body["from"].get<std::string>());
    if (body.contains("to")) c.to_ts = parse_utc_ms(body["to"].get<std::string>());
    if (body.contains("from_ts")) c.from_ts = body["from_ts"].get<std::int64_t>();
    if (body.contains("to_ts")) c.to_ts = body["to_ts"].get<std::int64_t>();
    if (body.contains("interval")) {
        c.interval_ms = parse_interval(body["interval"].get<std::string>());
    }
    if (body.contains("window")) c.window = body["window"].get<int>();
    if (body.contains("step")) c.step = body["step"].get<int>();
    if (body.contains("theta")) c.theta = body["theta"].get<double>();
    if (body.contains("return_kind")) {
        c.return_kind = parse_return_kind(body["return_kind"].get<std::string>());
    }
    if (body.contains("transform")) {
        c.transform = parse_similarity_transform(body["transform"].get<std::string>());
    }
    if (body.contains("adjacency")) {
        const auto mode = body["adjacency"].get<std::string>();
        if (mode == "weighted") {
            c.adjacency = AdjacencyMode::Weighted;
        } else if (mode == "binary") {
            c.adjacency = AdjacencyMode::Binary;
        } else {
            throw ConfigError(fmt::format("adjacency must be weighted or binary, got '{}'",
                                          mode));
        }
    }
    if (body.contains("bucket")) c.bucket = parse_bucket(body["bucket"].get<std::string>());
    return c;
}

std::string RunManifest::to_json() const {
    ordered_json j;
    j["version"] = kVersion;
    j["config"] = nlohmann::json::parse(config_echo);
    ordered_json inputs_json;
    for (const auto& [path, hash] : inputs) inputs_json[path] = hash;
    j["inputs"] = inputs_json;
    ordered_json outputs_json;
    for (const auto& [name, hash] : outputs) outputs_json[name] = hash;
    j["outputs"] = outputs_json;
    j["window_failures"] = window_failures;
    return j.dump(2) + "\n";
}

RunManifest run_pipeline(const RunConfig& config) {
    stage("config", [&] { config.validate(); });

    RunManifest manifest;
    manifest.config_echo = config_json(config).dump();
    const std::filesystem::path out_dir(config.out_dir);
    std::filesystem::create_directories(out_dir);

    const auto emit = [&](const std::string& name, const std::string& content) {
        const auto path = out_dir / name;
        csv::write_file_atomic(path, content);
        manifest.outputs[name] = fmt::format("fnv1a64:{:016x}", fnv1a64(content));
    };

    const CandleStore store(config.store_dir);
    const std::vector<std::string> focus = config.focus.empty() ? config.symbols : config.focus;

    // market-data: aligned panel over the configured grid.
    const PricePanel panel = stage("market-data", [&] {
        for (const auto& symbol : config.symbols) {
            const auto path = store.candle_path(symbol, config.quote, config.interval_ms);
            if (std::filesystem::exists(path)) {
                manifest.inputs[path.string()] = hash_file(path);
            }
        }
        return load_panel(store, config.symbols, config.quote, config.interval_ms,
                          {config.from_ts, config.to_ts});
    });

    // returns-transform: rescaled prices and the return panel.
    const ReturnPanel returns = stage("returns-transform", [&] {
        emit("rescaled.csv", panel_csv(rescale(panel)));
        return to_returns(panel, config.return_kind);
    });

    // ewcorr: rolling matrices streamed into the average-correlation series.
    const CorrelationSeries corr_series = stage("ewcorr", [&] {
        CorrelationSeriesBuilder builder(focus);
        rolling_corr_foreach(
            returns, config.window, config.step, config.effective_theta(),
            [&](WeightedCorrelationMatrix&& mat) { builder.add(mat); }, config.threads);
        return builder.finish();
    });
    emit("correlation_series.csv", correlation_series_csv(corr_series));

    // centrality: non-overlapping windows, TMFG, percentile bands.
    stage("centrality", [&] {
        const auto windows = centrality_over_windows(returns, config.window,
                                                     config.effective_theta(), config.transform,
                                                     config.adjacency, config.threads);
        std::vector<CentralityVector> ok_vectors;
        for (const auto& w : windows) {
            if (w.ok() && w.centrality) {
                ok_vectors.push_back(*w.centrality);
            } else {
                manifest.window_failures.push_back(
                    fmt::format("window ending {}: {}", w.window_end_ts, w.failure));
            }
        }
        emit("centrality_scores.csv", centrality_csv(windows));
        if (!ok_vectors.empty()) {
            emit("centrality_bands.csv", centrality_bands_csv(percentile_bands(ok_vectors,
                                                                               focus)));
        } else {
            emit("centrality_bands.csv", "window_end_ts,p1,p5,p25,p75,p95,p99\n");
        }
    });

    // bhr: endpoints are the first and last grid bars of the panel.
    stage("bhr", [&] {
        const BhrReport report = buy_and_hold(panel, panel.timestamps.front(),
                                              panel.timestamps.back());
        emit("bhr.csv", bhr_csv(report));
        emit("bhr_summary.json", bhr_summary_json(report));
    });

    // flow-imbalance: only when a tape is configured.
    if (!config.trades_path.empty()) {
        stage("flow-imbalance", [&] {
            manifest.inputs[config.trades_path] = hash_file(config.trades_path);
            const auto trades = load_trades(config.trades_path);
            const auto series = compute_imbalance(trades, config.bucket);
            emit("imbalance.csv", imbalance_csv(series));
        });
    }

    // report: optional event annotation of the timestamped outputs.
    if (!config.timeline_path.empty()) {
        stage("report", [&] {
            manifest.inputs[config.timeline_path] = hash_file(config.timeline_path);
            const EventTimeline timeline = load_timeline(config.timeline_path);
            const auto annotate = [&](const std::string& name) {
                if (!manifest.outputs.contains(name)) return;
                const auto annotated_name = name.substr(0, name.size() - 4) + "_annotated.csv";
                emit(annotated_name, annotate_csv(out_dir / name, timeline));
            };
            annotate("correlation_series.csv");
            annotate("imbalance.csv");
        });
    }

    csv::write_file_atomic(out_dir / "manifest.json", manifest.to_json());
    return manifest;
}

}  // namespace cryptonet
