#pragma once

#include <memory>
#include <optional>

#include "dimer/graph.hpp"
#include "dimer/laurent.hpp"
#include "dimer/polygon.hpp"
#include "dimer/quantum_torus.hpp"

namespace dimer {

// A perfect matching, as a sorted list of edge ids.
using Matching = std::vector<int>;

// All perfect matchings, duplicate-free, lexicographically ordered.
// An empty list is a valid answer.
std::vector<Matching> enumerate_matchings(const BipartiteTorusGraph& g);

// Edge signs with face monodromy (-1)^{l/2+1}; the two torus sign freedoms
// are fixed to (+1,+1). Deterministic (GF(2) elimination in edge order,
// free variables set to +1).
struct KasteleynSigns {
    std::vector<int> edgeSign;
    std::array<int, 2> torusSign{1, 1};
};

KasteleynSigns kasteleyn_signs(const BipartiteTorusGraph& g);

// Product of edge signs around a face, counting traversal multiplicity.
int faceSignProduct(const BipartiteTorusGraph& g, const KasteleynSigns& s, int face);

// One formal weight variable per edge: w0, w1, ...
std::vector<LaurentPoly> formalEdgeWeights(const BipartiteTorusGraph& g);

// det K, where K[b][w] = sum over edges b->w of sign * weight * z1^dx z2^dy.
// Requires equal black and white counts.
LaurentPoly partition_function(const BipartiteTorusGraph& g,
                               const std::vector<LaurentPoly>& weights,
                               const KasteleynSigns& signs);

// Sign of a matching inside det K: permutation parity times edge signs.
int matchingSign(const BipartiteTorusGraph& g, const Matching& m, const KasteleynSigns& signs);

// Weight monomial of a matching (weights times z^displacement).
LaurentPoly matchingMonomial(const BipartiteTorusGraph& g, const Matching& m,
                             const std::vector<LaurentPoly>& weights);

// The alpha-deformation data: a circular order of the zig-zags compatible
// with the boundary of the Newton polygon, alpha values on them, and the
// derived edge function phi with d(phi) = sum sgn(v) [v].
struct AlphaMap {
    std::vector<int> order;        // zig-zag indices in circular order
    std::vector<Rational> alpha;   // per zig-zag (indexed by zig-zag id)
    std::vector<Rational> phi;     // per edge, in [0,1]
    bool integral = false;
    Cycle chain() const;           // sum phi(E) [E]; requires integral
};

// Default vertex-map style: collapse all arcs but the one after the zig-zag
// of lexicographically smallest (class, transverse position); phi is a
// genuine perfect matching indicator.
AlphaMap alpha_phi(const BipartiteTorusGraph& g);

// Rational style: values per zig-zag id, must be circular-order preserving.
AlphaMap alpha_phi(const BipartiteTorusGraph& g, const std::vector<Rational>& alphaByZigzag);

// Homology class of [M] - Phi_alpha as a closed chain (requires integral phi).
Cycle matching_class_chain(const BipartiteTorusGraph& g, const Matching& m, const AlphaMap& phi);

// Hamiltonians and Casimirs of the integrable system, over the homology
// basis lattice with the intersection form epsilon.
struct HamiltonianSet {
    std::shared_ptr<const SkewForm> form;  // epsilon on the homology basis
    int dim = 0;
    // torus class -> quantum Hamiltonian (classes interior to the polygon)
    std::map<Disp, QuantumTorusElement> hamiltonians;
    // boundary classes: positive multiple of a single lattice character
    std::map<Disp, QuantumTorusElement> boundaryParts;
    std::map<Disp, int> classSign;  // Kasteleyn sign per torus class
    std::vector<std::vector<long long>> casimirs;  // zig-zag vectors
    NewtonPolygon polygon;                         // of the matching classes
    std::map<Disp, long long> classCount;          // matchings per class
};

HamiltonianSet hamiltonians(const BipartiteTorusGraph& g);
HamiltonianSet hamiltonians(const BipartiteTorusGraph& g, const AlphaMap& phi);

// Vertices of the matching polytope {omega in [0,1]^E : sum at each vertex
// is 1}, enumerated exactly. Limited to small graphs.
std::vector<std::vector<Rational>> matching_polytope_vertices(const BipartiteTorusGraph& g);

// Is omega inside the matching polytope?
bool inMatchingPolytope(const BipartiteTorusGraph& g, const std::vector<Rational>& omega);

// Newton polygon check: lp_newton_polygon of the partition function equals
// the expected polygon as translation classes, and every matching class
// satisfies the zig-zag inequalities <gamma,[Z]> <= l(Z)/2 - <omega0,[Z]>.
bool newton_check(const BipartiteTorusGraph& g, const NewtonPolygon& expected);

// Intersection pairing of a chain with a zig-zag: sum over passes of the
// zig-zag of +-coef, positive when the pass runs white->black.
long long chainZigzagPairing(const BipartiteTorusGraph& g, const Cycle& c, const ZigZag& z);

} // namespace dimer
