#include "cryptonet/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include <fmt/format.h>

#include "cryptonet/errors.hpp"
#include "cryptonet/parallel.hpp"
#include "cryptonet/percentile.hpp"

namespace cryptonet {

namespace {

double l2_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (const double x : v) s += x * x;
    return std::sqrt(s);
}

double l2_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

}  // namespace

CentralityVector eigenvector_centrality(const FilteredGraph& graph,
                                        PowerIterationOptions options) {
    const std::size_t n = graph.n_vertices();
    if (n == 0) throw InvalidParameter("centrality of an empty graph");

    // Adjacency rows; weights must be non-negative for the Perron vector to
    // be well defined.
    std::vector<std::vector<std::pair<int, double>>> adj(n);
    for (const auto& e : graph.edges) {
        if (e.weight < 0.0 || !std::isfinite(e.weight)) {
            throw InvalidParameter(fmt::format("edge ({}, {}) has invalid weight {}", e.i, e.j,
                                               e.weight));
        }
        const double w = options.adjacency == AdjacencyMode::Weighted ? e.weight : 1.0;
        adj[static_cast<std::size_t>(e.i)].emplace_back(e.j, w);
        adj[static_cast<std::size_t>(e.j)].emplace_back(e.i, w);
    }
    {
        std::vector<bool> seen(n, false);
        std::queue<int> frontier;
        frontier.push(0);
        seen[0] = true;
        std::size_t visited = 1;
        while (!frontier.empty()) {
            const int u = frontier.front();
            frontier.pop();
            for (const auto& [w, weight] : adj[static_cast<std::size_t>(u)]) {
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = true;
                    ++visited;
                    frontier.push(w);
                }
            }
        }
        if (visited != n) {
            throw DisconnectedGraph(fmt::format("graph has {} of {} vertices reachable",
                                                visited, n));
        }
    }

    std::vector<double> current(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> next(n, 0.0);
    double residual = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < options.max_iterations; ++iter) {
        // Iterate on A + I: same eigenvectors, but the unit shift breaks the
        // +/-lambda symmetry of bipartite graphs (star, path) that would
        // otherwise oscillate forever.
        for (std::size_t i = 0; i < n; ++i) {
            double acc = current[i];
            for (const auto& [j, w] : adj[i]) acc += w * current[static_cast<std::size_t>(j)];
            next[i] = acc;
        }
        const double norm = l2_norm(next);
        if (norm == 0.0) {
            throw NoConvergence("adjacency annihilated the iterate (all-zero weights?)",
                                residual);
        }
        for (auto& x : next) x /= norm;
        residual = l2_distance(current, next);
        current.swap(next);
        if (residual < options.tolerance) {
            CentralityVector out;
            out.symbols = graph.symbols;
            out.window_end_ts = 0;
            // Non-negative start and non-negative weights keep iterates
            // non-negative; clip the odd -0.
            for (auto& x : current) {
                if (x < 0.0) x = 0.0;
            }
            const double final_norm = l2_norm(current);
            for (auto& x : current) x /= final_norm;
            out.scores = std::move(current);
            return out;
        }
    }
    throw NoConvergence(fmt::format("power iteration hit the {} iteration cap, residual {}",
                                    options.max_iterations, residual),
                        residual);
}

std::vector<WindowCentrality> centrality_over_windows(const ReturnPanel& returns, int window,
                                                      double theta,
                                                      SimilarityTransform transform,
                                                      AdjacencyMode adjacency,
                                                      unsigned threads) {
    if (window < 1) throw InvalidParameter("window must be >= 1");
    const std::size_t t_r = returns.n_obs();
    const auto wlen = static_cast<std::size_t>(window);
    if (t_r < wlen) {
        throw WindowTooLong(fmt::format("window {} exceeds {} return observations", window,
                                        t_r));
    }
    const std::size_t count = t_r / wlen;  // non-overlapping, remainder dropped

    std::vector<WindowCentrality> out(count);
    parallel_for_index(
        count,
        [&](std::size_t k) {
            WindowCentrality& slot = out[k];
            const std::size_t start = k * wlen;
            slot.window_end_ts = returns.timestamps[start + wlen - 1];
            try {
                // Slice this window into a standalone panel and reuse the
                // overlapping engine with exactly one position.
                ReturnPanel piece;
                piece.symbols = returns.symbols;
                piece.kind = returns.kind;
                piece.timestamps.assign(returns.timestamps.begin() + start,
                                        returns.timestamps.begin() + start + wlen);
                piece.values = Matrix(returns.n_assets(), wlen);
                piece.mask = BoolMatrix(returns.n_assets(), wlen);
                for (std::size_t i = 0; i < returns.n_assets(); ++i) {
                    for (std::size_t t = 0; t < wlen; ++t) {
                        piece.values(i, t) = returns.values(i, start + t);
                        piece.mask.set(i, t, returns.mask(i, start + t));
                    }
                }
                const auto mats = rolling_corr(piece, window, 1, theta, 1);
                const SimilarityMatrix sim = to_similarity(mats.at(0), transform);
                const FilteredGraph graph = build_tmfg(sim);
                slot.verification = verify(graph);
                if (!slot.verification->all_pass()) {
                    slot.failure = fmt::format("graph verification failed: {}",
                                               slot.verification->summary());
                    return;
                }
                PowerIterationOptions options;
                options.adjacency = adjacency;
                CentralityVector vec = eigenvector_centrality(graph, options);
                vec.window_end_ts = slot.window_end_ts;
                slot.centrality = std::move(vec);
            } catch (const Error& e) {
                slot.failure = e.what();
            }
        },
        threads);
    return out;
}

CentralityBands percentile_bands(std::span<const CentralityVector> vectors,
                                 const std::vector<std::string>& focus) {
    if (vectors.empty()) throw InvalidParameter("percentile_bands needs at least one vector");
    const double nan = std::numeric_limits<double>::quiet_NaN();

    for (const auto& f : focus) {
        const bool present = std::any_of(vectors.begin(), vectors.end(), [&](const auto& v) {
            return std::find(v.symbols.begin(), v.symbols.end(), f) != v.symbols.end();
        });
        if (!present) {
            throw FocusMissing(fmt::format("focus symbol '{}' appears in no window", f));
        }
    }

    CentralityBands bands;
    bands.focus = focus;
    bands.focus_series = Matrix(focus.size(), vectors.size(), nan);
    bands.bands = Matrix(kBandRanks.size(), vectors.size(), nan);
    for (std::size_t w = 0; w < vectors.size(); ++w) {
        const auto& vec = vectors[w];
        bands.timestamps.push_back(vec.window_end_ts);
        std::vector<double> rest;
        rest.reserve(vec.symbols.size());
        for (std::size_t i = 0; i < vec.symbols.size(); ++i) {
            const auto it = std::find(focus.begin(), focus.end(), vec.symbols[i]);
            if (it != focus.end()) {
                bands.focus_series(static_cast<std::size_t>(it - focus.begin()), w) =
                    vec.scores[i];
            } else {
                rest.push_back(vec.scores[i]);
            }
        }
        if (rest.empty()) continue;  // no non-focus assets this window
        std::sort(rest.begin(), rest.end());
        for (std::size_t b = 0; b < kBandRanks.size(); ++b) {
            bands.bands(b, w) = percentile_sorted(rest, kBandRanks[b]);
        }
    }
    return bands;
}

}  // namespace cryptonet
