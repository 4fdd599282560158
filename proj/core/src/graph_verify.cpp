#include "cryptonet/graph_verify.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include <fmt/format.h>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

namespace cryptonet {

bool VerificationReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string VerificationReport::summary() const {
    std::string out;
    for (const auto& c : checks) {
        if (!out.empty()) out += "; ";
        out += fmt::format("{}={}", c.name, c.pass ? "pass" : "FAIL");
        if (!c.pass && !c.detail.empty()) out += fmt::format(" ({})", c.detail);
    }
    return out;
}

namespace {

std::vector<std::vector<int>> adjacency(const FilteredGraph& g) {
    std::vector<std::vector<int>> adj(g.n_vertices());
    for (const auto& e : g.edges) {
        adj[static_cast<std::size_t>(e.i)].push_back(e.j);
        adj[static_cast<std::size_t>(e.j)].push_back(e.i);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());
    return adj;
}

bool is_connected(const std::vector<std::vector<int>>& adj) {
    if (adj.empty()) return false;
    std::vector<bool> seen(adj.size(), false);
    std::queue<int> frontier;
    frontier.push(0);
    seen[0] = true;
    std::size_t visited = 1;
    while (!frontier.empty()) {
        const int u = frontier.front();
        frontier.pop();
        for (const int w : adj[static_cast<std::size_t>(u)]) {
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                ++visited;
                frontier.push(w);
            }
        }
    }
    return visited == adj.size();
}

bool is_planar(const FilteredGraph& g) {
    using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                             boost::property<boost::vertex_index_t, int>>;
    BoostGraph bg(g.n_vertices());
    for (const auto& e : g.edges) {
        boost::add_edge(static_cast<std::size_t>(e.i), static_cast<std::size_t>(e.j), bg);
    }
    return boost::boyer_myrvold_planarity_test(bg);
}

// Chordal iff a maximum cardinality search order is a perfect elimination
// ordering (Tarjan & Yannakakis).
bool is_chordal(const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    if (n <= 3) return true;
    std::vector<std::set<int>> nb(adj.size());
    for (int u = 0; u < n; ++u) nb[u] = std::set<int>(adj[u].begin(), adj[u].end());

    std::vector<int> weight(adj.size(), 0);
    std::vector<bool> numbered(adj.size(), false);
    std::vector<int> order;  // MCS order, last-numbered first when reversed
    order.reserve(adj.size());
    for (int step = 0; step < n; ++step) {
        int pick = -1;
        for (int u = 0; u < n; ++u) {
            if (numbered[u]) continue;
            if (pick == -1 || weight[u] > weight[pick]) pick = u;
        }
        numbered[pick] = true;
        order.push_back(pick);
        for (const int w : adj[static_cast<std::size_t>(pick)]) {
            if (!numbered[w]) ++weight[w];
        }
    }
    // Reverse MCS order is a candidate elimination order: for each vertex,
    // its already-eliminated... equivalently its later-ordered neighbours in
    // MCS order must form a clique around the earliest of them.
    std::vector<int> pos(adj.size(), 0);
    for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(order[i])] = i;
    for (int i = n - 1; i >= 0; --i) {
        const int v = order[static_cast<std::size_t>(i)];
        // Neighbours numbered before v in MCS order.
        std::vector<int> earlier;
        for (const int w : adj[static_cast<std::size_t>(v)]) {
            if (pos[static_cast<std::size_t>(w)] < i) earlier.push_back(w);
        }
        if (earlier.empty()) continue;
        const int parent = *std::max_element(earlier.begin(), earlier.end(),
                                             [&](int a, int b) { return pos[a] < pos[b]; });
        for (const int w : earlier) {
            if (w == parent) continue;
            if (!nb[static_cast<std::size_t>(parent)].contains(w)) return false;
        }
    }
    return true;
}

}  // namespace

VerificationReport verify(const FilteredGraph& graph) {
    VerificationReport report;
    const auto n = graph.n_vertices();
    const auto adj = adjacency(graph);

    {
        const std::size_t expected = n >= 3 ? 3 * n - 6 : 0;
        const bool ok = n >= 4 && graph.edges.size() == expected;
        report.checks.push_back({"edge_count", ok,
                                 fmt::format("{} edges, expected {}", graph.edges.size(),
                                             expected)});
    }
    {
        const bool ok = n > 0 && is_connected(adj);
        report.checks.push_back({"connected", ok, ok ? "" : "graph is not connected"});
    }
    {
        std::set<int> seed(graph.seed.begin(), graph.seed.end());
        int worst = -1;
        std::size_t worst_degree = 0;
        for (std::size_t v = 0; v < n; ++v) {
            if (seed.contains(static_cast<int>(v))) continue;
            if (adj[v].size() < 3 && (worst == -1 || adj[v].size() < worst_degree)) {
                worst = static_cast<int>(v);
                worst_degree = adj[v].size();
            }
        }
        report.checks.push_back({"min_degree", worst == -1,
                                 worst == -1 ? ""
                                             : fmt::format("vertex {} has degree {}", worst,
                                                           worst_degree)});
    }
    {
        const bool ok = is_planar(graph);
        report.checks.push_back({"planar", ok, ok ? "" : "Boyer-Myrvold test failed"});
    }
    {
        const bool ok = is_chordal(adj);
        report.checks.push_back({"chordal", ok,
                                 ok ? "" : "no perfect elimination ordering found"});
    }
    return report;
}

}  // namespace cryptonet
