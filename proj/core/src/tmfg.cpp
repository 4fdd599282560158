#include "cryptonet/tmfg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "cryptonet/errors.hpp"

namespace cryptonet {

SimilarityTransform parse_similarity_transform(const std::string& text) {
    if (text == "square") return SimilarityTransform::Square;
    if (text == "abs") return SimilarityTransform::Abs;
    if (text == "shift") return SimilarityTransform::RawShifted;
    throw InvalidParameter(
        fmt::format("similarity transform must be square, abs or shift, got '{}'", text));
}

const char* similarity_transform_label(SimilarityTransform t) {
    switch (t) {
        case SimilarityTransform::Square: return "square";
        case SimilarityTransform::Abs: return "abs";
        case SimilarityTransform::RawShifted: return "shift";
    }
    return "square";
}

void SimilarityMatrix::validate() const {
    const std::size_t n = symbols.size();
    if (values.rows() != n || values.cols() != n) {
        throw ValidationError("similarity matrix shape does not match symbol list");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (values(i, i) != 0.0) {
            throw ValidationError(fmt::format("similarity diagonal entry {} is {}", i,
                                              values(i, i)));
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            if (values(i, j) != values(j, i)) {
                throw ValidationError(fmt::format("similarity asymmetry at ({}, {})", i, j));
            }
            if (!(values(i, j) >= 0.0) || !std::isfinite(values(i, j))) {
                throw ValidationError(fmt::format("similarity entry ({}, {}) = {} invalid", i,
                                                  j, values(i, j)));
            }
        }
    }
}

SimilarityMatrix to_similarity(const WeightedCorrelationMatrix& corr,
                               SimilarityTransform transform) {
    corr.validate();
    const std::size_t n = corr.symbols.size();
    SimilarityMatrix sim;
    sim.symbols = corr.symbols;
    sim.values = Matrix(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double rho = corr.values(i, j);
            double s = 0.0;
            switch (transform) {
                case SimilarityTransform::Square: s = rho * rho; break;
                case SimilarityTransform::Abs: s = std::fabs(rho); break;
                case SimilarityTransform::RawShifted: s = (1.0 + rho) / 2.0; break;
            }
            sim.values(i, j) = s;
        }
    }
    return sim;
}

namespace {

struct Face {
    std::array<int, 3> v{};
    bool alive = true;
    int best_vertex = -1;     // -1 when no remaining vertex
    double best_gain = 0.0;
};

std::array<int, 4> pick_seed(const Matrix& sim, int n) {
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> row_sum(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) row_sum[i] += sim(i, j);
    }
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (row_sum[a] != row_sum[b]) return row_sum[a] > row_sum[b];
        return a < b;
    });
    const int k = std::min(n, 8);

    std::array<int, 4> best{};
    double best_weight = -1.0;
    std::array<int, 4> pick{};
    for (int a = 0; a < k; ++a) {
        for (int b = a + 1; b < k; ++b) {
            for (int c = b + 1; c < k; ++c) {
                for (int d = c + 1; d < k; ++d) {
                    pick = {order[a], order[b], order[c], order[d]};
                    std::sort(pick.begin(), pick.end());
                    double weight = 0.0;
                    for (int p = 0; p < 4; ++p) {
                        for (int q = p + 1; q < 4; ++q) weight += sim(pick[p], pick[q]);
                    }
                    if (weight > best_weight ||
                        (weight == best_weight && pick < best)) {
                        best_weight = weight;
                        best = pick;
                    }
                }
            }
        }
    }
    return best;
}

}  // namespace

FilteredGraph build_tmfg(const SimilarityMatrix& sim) {
    sim.validate();
    const int n = static_cast<int>(sim.symbols.size());
    if (n < 4) {
        throw TooFewVertices(fmt::format("TMFG needs at least 4 vertices, got {}", n));
    }
    const Matrix& s = sim.values;

    FilteredGraph graph;
    graph.symbols = sim.symbols;
    graph.seed = pick_seed(s, n);

    std::vector<bool> in_graph(static_cast<std::size_t>(n), false);
    for (const int v : graph.seed) in_graph[static_cast<std::size_t>(v)] = true;
    std::vector<int> remaining;
    for (int v = 0; v < n; ++v) {
        if (!in_graph[static_cast<std::size_t>(v)]) remaining.push_back(v);
    }

    std::vector<std::pair<int, int>> edge_pairs;
    auto add_edge = [&](int a, int b) {
        edge_pairs.emplace_back(std::min(a, b), std::max(a, b));
    };
    const auto& sd = graph.seed;
    for (int p = 0; p < 4; ++p) {
        for (int q = p + 1; q < 4; ++q) add_edge(sd[p], sd[q]);
    }

    std::vector<Face> faces;
    auto face_gain = [&](const Face& f, int v) {
        return s(v, f.v[0]) + s(v, f.v[1]) + s(v, f.v[2]);
    };
    auto refresh_best = [&](Face& f) {
        f.best_vertex = -1;
        f.best_gain = 0.0;
        for (const int v : remaining) {
            const double g = face_gain(f, v);
            if (f.best_vertex == -1 || g > f.best_gain) {
                f.best_vertex = v;
                f.best_gain = g;
            }
        }
    };
    auto push_face = [&](int a, int b, int c) {
        Face f;
        f.v = {a, b, c};
        std::sort(f.v.begin(), f.v.end());
        refresh_best(f);
        faces.push_back(f);
    };
    push_face(sd[0], sd[1], sd[2]);
    push_face(sd[0], sd[1], sd[3]);
    push_face(sd[0], sd[2], sd[3]);
    push_face(sd[1], sd[2], sd[3]);

    while (!remaining.empty()) {
        // Global best (gain desc, vertex asc, face creation order asc).
        std::size_t best_face = faces.size();
        for (std::size_t fi = 0; fi < faces.size(); ++fi) {
            const Face& f = faces[fi];
            if (!f.alive || f.best_vertex < 0) continue;
            if (best_face == faces.size()) {
                best_face = fi;
                continue;
            }
            const Face& cur = faces[best_face];
            if (f.best_gain > cur.best_gain ||
                (f.best_gain == cur.best_gain && f.best_vertex < cur.best_vertex)) {
                best_face = fi;
            }
        }
        Face& host = faces[best_face];
        const int v = host.best_vertex;

        graph.insertion_log.push_back({v, host.v});
        add_edge(v, host.v[0]);
        add_edge(v, host.v[1]);
        add_edge(v, host.v[2]);
        in_graph[static_cast<std::size_t>(v)] = true;
        remaining.erase(std::find(remaining.begin(), remaining.end(), v));

        const std::array<int, 3> hv = host.v;
        host.alive = false;
        push_face(hv[0], hv[1], v);
        push_face(hv[0], hv[2], v);
        push_face(hv[1], hv[2], v);

        // Only caches pinned to the consumed vertex need a rescan.
        for (auto& f : faces) {
            if (f.alive && f.best_vertex == v) refresh_best(f);
        }
    }

    std::sort(edge_pairs.begin(), edge_pairs.end());
    graph.edges.reserve(edge_pairs.size());
    for (const auto& [a, b] : edge_pairs) {
        graph.edges.push_back({a, b, s(a, b)});
    }
    for (const auto& f : faces) {
        if (f.alive) graph.triangles.push_back(f.v);
    }
    return graph;
}

}  // namespace cryptonet
