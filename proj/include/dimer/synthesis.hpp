#pragma once

#include <array>
#include <optional>

#include "dimer/graph.hpp"
#include "dimer/polygon.hpp"

namespace dimer {

// ---------------------------------------------------------------------------
// Triple point diagrams on the torus, built from a Newton polygon by the
// geodesic + disk-induction construction.

// Boundary data of the strand diagram on the fundamental square.
struct GeodesicBoundary {
    // endpoint on one side of the square
    struct Endpoint {
        int piece;      // strand piece index
        bool in;        // entering the square
        Rational pos;   // position along the side
    };
    std::array<std::vector<Endpoint>, 4> side;  // bottom, right, top, left (ccw)
    int numPieces = 0;
    std::vector<int> pieceLoop;        // piece -> loop index
    std::vector<Disp> loopClass;       // loop -> homology class
    std::vector<int> pieceNext;        // piece -> next piece along its loop
    std::vector<Disp> pieceStep;       // offset gained entering pieceNext
};

GeodesicBoundary geodesic_boundary_data(const NewtonPolygon& n);

// Combinatorial triple point diagram glued back on the torus.
struct TripleDiagram {
    int numTriples = 0;
    // per strand: triple ids in traversal order, with the cover offset at
    // each pass and the strand's homology class
    struct Pass {
        int triple;
        int role;  // 0,1,2: position in the triple's cyclic order
        Disp offset;
    };
    std::vector<std::vector<Pass>> strand;
    std::vector<Disp> strandClass;
};

TripleDiagram triple_crossing_diagram(const GeodesicBoundary& b);

// Counterclockwise resolution into a bipartite torus graph; 2-valent white
// vertices are then shrunk away.
BipartiteTorusGraph resolve_to_bipartite(const TripleDiagram& d);

// The whole pipeline with validity checks (minimality, zig-zag classes,
// face count 2*area).
BipartiteTorusGraph synthesize_minimal_graph(const NewtonPolygon& n);

// ---------------------------------------------------------------------------
// Elementary transformations.

// Spider move at a quadrilateral face. Black corners of valence > 3 are
// first split off through 2-valent whites, so the move applies to any quad
// with distinct corner vertices. Side faces are labeled so that sides 0 and
// 2 carry pairing -1 against the center face (they gain the factor (1+W)
// under the face-weight map).
struct SpiderMove {
    BipartiteTorusGraph prepared;  // after the 2-valent insertions
    BipartiteTorusGraph graph;     // the transformed graph
    std::vector<int> faceMap;      // old face id -> new face id
    int centerOld, centerNew;
    std::array<int, 4> sidesOld, sidesNew;
    // inside edge ids (in the prepared graph), old roles a..f and new roles
    // B,E,C,A,D,F
    std::array<int, 6> oldEdges, newEdges;
    // data for pulling cycles of the new graph back
    Cycle pullP12, pullP23, pullP13, pullP34;
    int eB, eE, eC, eA, eD, eF;
    std::vector<std::pair<int, int>> prepEdges;  // (eKeep, eMove) per insertion

    // Transport a closed chain on the new graph back to the original graph,
    // realizing the identification of the conjugate surfaces.
    Cycle pullbackCycle(const Cycle& onNew) const;
    // Same, but only to the prepared graph.
    Cycle pullbackCycleToPrepared(const Cycle& onNew) const;
};

SpiderMove spider_move(const BipartiteTorusGraph& g, int face);

// Shrink a 2-valent white vertex (merging its two black neighbors).
struct ShrinkResult {
    BipartiteTorusGraph graph;
    std::vector<int> faceMap;    // old face -> new face
    std::vector<int> vertexMap;  // old vertex -> new vertex (-1 for removed)
    std::vector<int> edgeMap;    // old edge -> new edge (-1 for removed)
    int mergedBlack;             // surviving black vertex (new id)
    // data to transport chains back: removed edges and their black sides
    int removedE1, removedE2;    // old ids, E1 at the surviving black
    std::vector<int> sideB2Old;  // old edges that sat at the absorbed black
};

ShrinkResult shrink_white(const BipartiteTorusGraph& g, int w);

// Expand a black vertex: split a cyclic run of its edges onto a new black
// vertex joined through a new 2-valent white. splitStart indexes into the
// rotation of b; splitLen >= 1 edges move to the new black.
struct ExpandResult {
    BipartiteTorusGraph graph;
    std::vector<int> faceMap;  // old face -> new face
    int newWhite, newBlack;
    int eKeep, eMove;  // new edges: b - w and w - newBlack
};

ExpandResult expand_black(const BipartiteTorusGraph& g, int b, int splitStart, int splitLen);

// Color/rotation/displacement-preserving isomorphism (up to per-vertex lift
// gauge). Deterministic: first match in lexicographic search order.
struct GraphIso {
    std::vector<int> vertexMap;  // g1 vertex -> g2 vertex
    std::vector<int> edgeMap;    // g1 edge -> g2 edge
};
std::optional<GraphIso> find_isomorphism(const BipartiteTorusGraph& a,
                                         const BipartiteTorusGraph& b);

} // namespace dimer
