#pragma once

#include <memory>
#include <variant>

#include "dimer/cluster.hpp"
#include "dimer/dimer_model.hpp"
#include "dimer/rational_expr.hpp"
#include "dimer/synthesis.hpp"

namespace dimer {

// A chain of elementary moves starting from a fixed graph, with the composed
// cluster pullback: homology classes of the current graph can be pulled back
// to the start graph, and characters pull back to rational expressions in
// the start graph's basis characters X0..X{dim-1} (spider moves contribute
// their (1 + X_{gamma_F}) factors, shrink/expand and relabeling are monomial).
class TransportChain {
public:
    explicit TransportChain(BipartiteTorusGraph start);

    const BipartiteTorusGraph& current() const { return graphs_.back(); }
    const BipartiteTorusGraph& start() const { return graphs_.front(); }
    int steps() const { return static_cast<int>(moves_.size()); }

    // face of the current graph a start face maps to
    int mapFaceForward(int startFace) const;

    void applySpider(int face);
    void applyShrink(int white);
    void applyExpand(int black, int splitStart, int splitLen);
    // relabel the current graph along an isomorphism current -> target
    void applyIsomorphism(const GraphIso& iso, const BipartiteTorusGraph& target);

    Cycle pullCycle(const Cycle& onCurrent) const;
    RationalExpr pullCharacter(const Cycle& onCurrent) const;

    // Pull a quantum torus element over the current graph's homology lattice
    // back through the chain; spider factors applied as quantum conjugation.
    // Returns num * den^{-1} over the start lattice.
    QTRational pullQuantum(const QuantumTorusElement& onCurrent) const;

private:
    struct SpiderStep {
        SpiderMove mv;
    };
    struct ShrinkStep {
        ShrinkResult r;
        std::vector<int> invEdge;  // new edge -> old edge
    };
    struct ExpandStep {
        ExpandResult r;
    };
    struct RelabelStep {
        std::vector<int> invEdge;  // target edge -> source edge
    };
    using Step = std::variant<SpiderStep, ShrinkStep, ExpandStep, RelabelStep>;

    std::vector<BipartiteTorusGraph> graphs_;  // level 0..n
    std::vector<Step> moves_;                  // move i: level i -> i+1
    std::vector<std::vector<int>> faceMaps_;   // per move: face map level i -> i+1

    mutable std::vector<std::unique_ptr<HomologyBasis>> bases_;
    mutable std::vector<std::shared_ptr<const SkewForm>> forms_;
    mutable std::map<std::pair<int, std::vector<long long>>, RationalExpr> charCache_;

    const HomologyBasis& basisAt(int level) const;
    const SkewForm& formAt(int level) const;
    Cycle pullOne(int level, const Cycle& c) const;  // level+1 -> level
    RationalExpr charAt(int level, const Cycle& c) const;
};

// Report of the modified-partition-function invariance under one spider move.
struct SpiderInvarianceReport {
    bool holds = false;            // classical identity, up to the monomial
    bool casimirInSpan = false;    // the monomial lies in the zig-zag span
    bool zigzagsMatch = false;     // zig-zag chains map to zig-zag chains
    bool quantumHolds = false;     // quantum Hamiltonians preserved
    std::vector<long long> casimirVector;
    std::array<int, 2> signTwist{1, 1};  // Kasteleyn bundle alignment used
    int globalSign = 1;
};

SpiderInvarianceReport verify_spider_invariance(const BipartiteTorusGraph& g, int face);

// The modified partition function as a Laurent polynomial in the basis
// characters of the homology lattice.
LaurentPoly modifiedPartitionFunction(const HamiltonianSet& hs, std::array<int, 2> twist = {1, 1});

} // namespace dimer
