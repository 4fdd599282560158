#pragma once

#include <string>
#include <vector>

#include "cryptonet/tmfg.hpp"

namespace cryptonet {

// Independent structural verification of a FilteredGraph. Failures are
// report entries, never exceptions.
struct VerificationReport {
    struct Check {
        std::string name;
        bool pass = false;
        std::string detail;
    };
    std::vector<Check> checks;

    bool all_pass() const;
    std::string summary() const;
};

// Runs, in order: edge_count (3N-6), connected, min_degree (>= 3 for
// non-seed vertices), planar (Boyer-Myrvold, independent of the builder),
// chordal (maximum cardinality search + perfect elimination check).
VerificationReport verify(const FilteredGraph& graph);

}  // namespace cryptonet
