#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <tuple>
#include <utility>

#include "cryptonet/bhr.hpp"
#include "cryptonet/centrality.hpp"
#include "cryptonet/ewcorr.hpp"
#include "cryptonet/imbalance.hpp"
#include "cryptonet/price_panel.hpp"
#include "cryptonet/tmfg.hpp"

namespace cryptonet {

// Plot-ready CSV/JSON renderings of the analysis outputs. NaN gaps become
// empty fields. All output is deterministic byte for byte.

std::string panel_csv(const PricePanel& panel);
std::string panel_mask_csv(const PricePanel& panel);

// ts,market_mean,<focus...>
std::string correlation_series_csv(const CorrelationSeries& series);

// window_end_ts,sym_i,sym_j,rho with i < j
std::string correlation_matrix_rows(const WeightedCorrelationMatrix& mat);
std::string correlation_matrices_csv(std::span<const WeightedCorrelationMatrix> mats);
// sym_i,sym_j,rho — the per-window file variant
std::string correlation_matrix_csv(const WeightedCorrelationMatrix& mat);

// window_end_ts,sym_i,sym_j,weight
std::string tmfg_edges_csv(std::span<const std::pair<std::int64_t, FilteredGraph>> graphs);
// JSON sidecar: seed, insertion log, verification per window
std::string tmfg_sidecar_json(
    std::span<const std::tuple<std::int64_t, FilteredGraph, VerificationReport>> graphs);

// window_end_ts,symbol,score
std::string centrality_csv(std::span<const WindowCentrality> windows);
// window_end_ts,p1,p5,p25,p75,p95,p99
std::string centrality_bands_csv(const CentralityBands& bands);
// window_end_ts,<focus...> — focus assets' own scores
std::string centrality_focus_csv(const CentralityBands& bands);

std::string bhr_csv(const BhrReport& report);
std::string bhr_summary_json(const BhrReport& report);

// bucket_start_ts,buy_total,sell_total,imbalance
std::string imbalance_csv(const ImbalanceSeries& series);

}  // namespace cryptonet
