#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cryptonet/graph_verify.hpp"
#include "cryptonet/returns.hpp"
#include "cryptonet/tmfg.hpp"

namespace cryptonet {

enum class AdjacencyMode { Weighted, Binary };

// Principal-eigenvector scores: non-negative, L2 norm 1.
struct CentralityVector {
    std::vector<std::string> symbols;
    std::vector<double> scores;
    std::int64_t window_end_ts = 0;
};

struct PowerIterationOptions {
    double tolerance = 1e-10;  // Euclidean distance between iterates
    int max_iterations = 10'000;
    AdjacencyMode adjacency = AdjacencyMode::Weighted;
};

// Power iteration from a uniform start vector. The iteration runs on A + I
// (the unit shift leaves eigenvectors untouched but makes bipartite spectra
// converge), so the result is the principal eigenvector of the weighted
// adjacency itself. Throws DisconnectedGraph up front and NoConvergence
// (with the residual) when the iteration cap is reached — the degenerate
// near-tied-eigengap escape hatch.
CentralityVector eigenvector_centrality(const FilteredGraph& graph,
                                        PowerIterationOptions options = {});

// One pipeline window: correlation -> similarity -> TMFG -> centrality.
// A window whose graph cannot be built or fails verification carries a
// failure marker instead of scores.
struct WindowCentrality {
    std::int64_t window_end_ts = 0;
    std::optional<CentralityVector> centrality;
    std::optional<VerificationReport> verification;
    std::string failure;  // empty on success

    bool ok() const { return failure.empty(); }
};

// Non-overlapping windows (step == window); output count floor(T_r / window).
std::vector<WindowCentrality> centrality_over_windows(
    const ReturnPanel& returns, int window, double theta,
    SimilarityTransform transform = SimilarityTransform::Square,
    AdjacencyMode adjacency = AdjacencyMode::Weighted, unsigned threads = 0);

// Cross-sectional percentile bands over non-focus scores, plus the focus
// assets' own series. Gaps are NaN.
struct CentralityBands {
    std::vector<std::int64_t> timestamps;
    std::vector<std::string> focus;
    Matrix focus_series;  // focus x W
    Matrix bands;         // 6 x W, rows p1, p5, p25, p75, p95, p99
};

inline constexpr std::array<double, 6> kBandRanks = {1.0, 5.0, 25.0, 75.0, 95.0, 99.0};

CentralityBands percentile_bands(std::span<const CentralityVector> vectors,
                                 const std::vector<std::string>& focus);

}  // namespace cryptonet
