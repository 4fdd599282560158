#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cryptonet/ewcorr.hpp"
#include "cryptonet/matrix.hpp"

namespace cryptonet {

enum class SimilarityTransform { Square, Abs, RawShifted };

SimilarityTransform parse_similarity_transform(const std::string& text);
const char* similarity_transform_label(SimilarityTransform t);

// Non-negative pairwise similarity scores with a zeroed diagonal.
struct SimilarityMatrix {
    std::vector<std::string> symbols;
    Matrix values;  // N x N, symmetric, >= 0, zero diagonal

    void validate() const;
};

// Square: rho^2; Abs: |rho|; RawShifted: (1 + rho) / 2.
SimilarityMatrix to_similarity(const WeightedCorrelationMatrix& corr,
                               SimilarityTransform transform);

struct WeightedEdge {
    int i = 0;  // i < j
    int j = 0;
    double weight = 0.0;

    bool operator==(const WeightedEdge&) const = default;
};

struct Insertion {
    int vertex = 0;
    std::array<int, 3> face{};  // host triangle, ascending vertex order

    bool operator==(const Insertion&) const = default;
};

// Triangulated maximally filtered graph: maximal planar (3N-6 edges),
// chordal, built by greedy vertex-into-triangle insertions from a
// maximum-weight 4-clique seed. insertion_log fully reconstructs the build.
struct FilteredGraph {
    std::vector<std::string> symbols;
    std::vector<WeightedEdge> edges;           // ascending (i, j)
    std::vector<std::array<int, 3>> triangles;  // final face set
    std::vector<Insertion> insertion_log;
    std::array<int, 4> seed{};

    std::size_t n_vertices() const { return symbols.size(); }
};

// Greedy TMFG construction.
//
// Seed: vertices are ranked by similarity row sum (ties -> lower index); the
// 4-subset of the top 8 candidates with maximal total pairwise similarity
// wins, ties by lexicographic index order. Each step then inserts the
// (vertex, face) pair with maximal gain = sum of the vertex's similarity to
// the face's 3 vertices; ties by lowest vertex index, then face creation
// order. Per-face best-gain caches keep the build at O(N^2) overall.
FilteredGraph build_tmfg(const SimilarityMatrix& sim);

}  // namespace cryptonet
