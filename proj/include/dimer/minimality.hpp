#pragma once

#include <optional>
#include <string>

#include "dimer/graph.hpp"

namespace dimer {

// Why a graph fails minimality.
struct MinimalityWitness {
    enum class Kind { SelfCrossing, ParallelBigon, ContractibleStrand };
    Kind kind;
    int strandA = -1, strandB = -1;  // zig-zag indices
    int edgeA = -1, edgeB = -1;      // crossing edges (edgeB = -1 for single-point kinds)
    std::string describe() const;
};

struct MinimalityReport {
    bool minimal = true;
    std::optional<MinimalityWitness> witness;
    // crossings on the torus per unordered strand pair, for diagnostics
    std::map<std::pair<int, int>, long long> crossingCounts;
};

// Lifts the zig-zag strands to the universal cover (kept exact through their
// periodicity) and checks the two minimality conditions: no strand
// self-crosses, and no two strands cross twice with parallel orientation.
// A homologically trivial strand is reported as a violation of its own kind.
MinimalityReport minimality_check(const BipartiteTorusGraph& g);

} // namespace dimer
