#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "cryptonet/centrality.hpp"
#include "cryptonet/imbalance.hpp"
#include "cryptonet/returns.hpp"
#include "cryptonet/tmfg.hpp"

namespace cryptonet {

// Full-run configuration; loadable from JSON with flag overrides on top.
struct RunConfig {
    std::string store_dir;             // candle store directory
    std::string trades_path;           // optional trade CSV
    std::string timeline_path;         // optional event timeline CSV
    std::vector<std::string> symbols;
    std::string quote = "USDT";
    std::int64_t from_ts = 0;
    std::int64_t to_ts = 0;            // panel range [from_ts, to_ts)
    std::int64_t interval_ms = 3'600'000;
    int window = 24;
    int step = 1;
    double theta = 0.0;                // 0 -> default profile window / 3
    ReturnKind return_kind = ReturnKind::Log;
    SimilarityTransform transform = SimilarityTransform::Square;
    AdjacencyMode adjacency = AdjacencyMode::Weighted;
    Bucket bucket = Bucket::Hour;
    std::vector<std::string> focus;    // defaults to symbols when empty
    std::string out_dir;
    unsigned threads = 0;

    double effective_theta() const;
    void validate() const;
};

RunConfig load_run_config(const std::filesystem::path& path);

struct RunManifest {
    std::map<std::string, std::string> inputs;   // path -> content hash
    std::map<std::string, std::string> outputs;  // filename -> content hash
    std::vector<std::string> window_failures;    // centrality windows with markers
    std::string config_echo;                     // canonical JSON of the config

    std::string to_json() const;
};

// Executes the full branch set: panel -> returns -> rolling correlations ->
// average series; non-overlapping centrality with percentile bands; BHR over
// the panel endpoints; rescaled prices; and trade imbalance when a tape is
// configured. Every output lands in config.out_dir and is listed in
// manifest.json with a content hash; identical inputs give identical bytes.
//
// Any stage error is rethrown with the stage name (and window index where
// applicable) prepended, preserving the error category.
RunManifest run_pipeline(const RunConfig& config);

}  // namespace cryptonet
