#include "cryptonet/exports.hpp"

#include <cmath>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "cryptonet/csv.hpp"

namespace cryptonet {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string cell(double v) {
    return std::isnan(v) ? std::string() : csv::format_double(v);
}

}  // namespace

std::string panel_csv(const PricePanel& panel) {
    std::string out = "ts";
    for (const auto& s : panel.symbols) out += fmt::format(",{}", s);
    out += '\n';
    for (std::size_t t = 0; t < panel.n_bars(); ++t) {
        out += fmt::format("{}", panel.timestamps[t]);
        for (std::size_t i = 0; i < panel.n_assets(); ++i) {
            out += ',';
            out += cell(panel.prices(i, t));
        }
        out += '\n';
    }
    return out;
}

std::string panel_mask_csv(const PricePanel& panel) {
    std::string out = "ts";
    for (const auto& s : panel.symbols) out += fmt::format(",{}", s);
    out += '\n';
    for (std::size_t t = 0; t < panel.n_bars(); ++t) {
        out += fmt::format("{}", panel.timestamps[t]);
        for (std::size_t i = 0; i < panel.n_assets(); ++i) {
            out += panel.mask(i, t) ? ",1" : ",0";
        }
        out += '\n';
    }
    return out;
}

std::string correlation_series_csv(const CorrelationSeries& series) {
    std::string out = "ts,market_mean";
    for (const auto& s : series.focus) out += fmt::format(",{}", s);
    out += '\n';
    for (std::size_t w = 0; w < series.timestamps.size(); ++w) {
        out += fmt::format("{},{}", series.timestamps[w], cell(series.market_mean[w]));
        for (std::size_t f = 0; f < series.focus.size(); ++f) {
            out += ',';
            out += cell(series.per_asset_mean(f, w));
        }
        out += '\n';
    }
    return out;
}

std::string correlation_matrix_rows(const WeightedCorrelationMatrix& mat) {
    std::string out;
    for (std::size_t i = 0; i < mat.symbols.size(); ++i) {
        for (std::size_t j = i + 1; j < mat.symbols.size(); ++j) {
            out += fmt::format("{},{},{},{}\n", mat.window_end_ts, mat.symbols[i],
                               mat.symbols[j], csv::format_double(mat.values(i, j)));
        }
    }
    return out;
}

std::string correlation_matrices_csv(std::span<const WeightedCorrelationMatrix> mats) {
    std::string out = "window_end_ts,sym_i,sym_j,rho\n";
    for (const auto& mat : mats) out += correlation_matrix_rows(mat);
    return out;
}

std::string correlation_matrix_csv(const WeightedCorrelationMatrix& mat) {
    std::string out = "sym_i,sym_j,rho\n";
    for (std::size_t i = 0; i < mat.symbols.size(); ++i) {
        for (std::size_t j = i + 1; j < mat.symbols.size(); ++j) {
            out += fmt::format("{},{},{}\n", mat.symbols[i], mat.symbols[j],
                               csv::format_double(mat.values(i, j)));
        }
    }
    return out;
}

std::string tmfg_edges_csv(std::span<const std::pair<std::int64_t, FilteredGraph>> graphs) {
    std::string out = "window_end_ts,sym_i,sym_j,weight\n";
    for (const auto& [ts, graph] : graphs) {
        for (const auto& e : graph.edges) {
            out += fmt::format("{},{},{},{}\n", ts, graph.symbols[static_cast<std::size_t>(e.i)],
                               graph.symbols[static_cast<std::size_t>(e.j)],
                               csv::format_double(e.weight));
        }
    }
    return out;
}

std::string tmfg_sidecar_json(
    std::span<const std::tuple<std::int64_t, FilteredGraph, VerificationReport>> graphs) {
    ordered_json windows = ordered_json::array();
    for (const auto& [ts, graph, report] : graphs) {
        ordered_json entry;
        entry["window_end_ts"] = ts;
        ordered_json seed = ordered_json::array();
        for (const int v : graph.seed) seed.push_back(graph.symbols[static_cast<std::size_t>(v)]);
        entry["seed"] = seed;
        ordered_json log = ordered_json::array();
        for (const auto& ins : graph.insertion_log) {
            ordered_json rec;
            rec["vertex"] = graph.symbols[static_cast<std::size_t>(ins.vertex)];
            ordered_json face = ordered_json::array();
            for (const int v : ins.face) face.push_back(graph.symbols[static_cast<std::size_t>(v)]);
            rec["face"] = face;
            log.push_back(rec);
        }
        entry["insertion_log"] = log;
        ordered_json checks = ordered_json::array();
        for (const auto& c : report.checks) {
            ordered_json check;
            check["name"] = c.name;
            check["pass"] = c.pass;
            if (!c.detail.empty()) check["detail"] = c.detail;
            checks.push_back(check);
        }
        entry["verification"] = checks;
        windows.push_back(entry);
    }
    return windows.dump(2) + "\n";
}

std::string centrality_csv(std::span<const WindowCentrality> windows) {
    std::string out = "window_end_ts,symbol,score\n";
    for (const auto& w : windows) {
        if (!w.ok() || !w.centrality) continue;
        const auto& vec = *w.centrality;
        for (std::size_t i = 0; i < vec.symbols.size(); ++i) {
            out += fmt::format("{},{},{}\n", vec.window_end_ts, vec.symbols[i],
                               csv::format_double(vec.scores[i]));
        }
    }
    return out;
}

std::string centrality_bands_csv(const CentralityBands& bands) {
    std::string out = "window_end_ts,p1,p5,p25,p75,p95,p99\n";
    for (std::size_t w = 0; w < bands.timestamps.size(); ++w) {
        out += fmt::format("{}", bands.timestamps[w]);
        for (std::size_t b = 0; b < kBandRanks.size(); ++b) {
            out += ',';
            out += cell(bands.bands(b, w));
        }
        out += '\n';
    }
    return out;
}

std::string centrality_focus_csv(const CentralityBands& bands) {
    std::string out = "window_end_ts";
    for (const auto& s : bands.focus) out += fmt::format(",{}", s);
    out += '\n';
    for (std::size_t w = 0; w < bands.timestamps.size(); ++w) {
        out += fmt::format("{}", bands.timestamps[w]);
        for (std::size_t f = 0; f < bands.focus.size(); ++f) {
            out += ',';
            out += cell(bands.focus_series(f, w));
        }
        out += '\n';
    }
    return out;
}

std::string bhr_csv(const BhrReport& report) {
    std::string out = "symbol,bhr\n";
    for (const auto& e : report.entries) {
        out += fmt::format("{},{}\n", e.symbol, csv::format_double(e.bhr));
    }
    return out;
}

std::string bhr_summary_json(const BhrReport& report) {
    ordered_json summary;
    summary["median"] = report.median;
    summary["p25"] = report.p25;
    summary["p75"] = report.p75;
    summary["dropped"] = report.dropped;
    return summary.dump(2) + "\n";
}

std::string imbalance_csv(const ImbalanceSeries& series) {
    std::string out = "bucket_start_ts,buy_total,sell_total,imbalance\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        out += fmt::format("{},{},{},{}\n", series.timestamps[i],
                           format_units(series.buy_units[i]), format_units(series.sell_units[i]),
                           format_units(series.imbalance_units(i)));
    }
    return out;
}

}  // namespace cryptonet
