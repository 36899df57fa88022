#pragma once

#include "dimer/graph.hpp"

namespace dimer {

// Precomputed standard graphs. These bypass synthesis for the common cases
// and double as oracle targets for it.

// Torus honeycomb: one black, one white, three edges with displacements
// (0,0), (1,0), (0,1). Newton polygon of its partition function is the unit
// triangle.
BipartiteTorusGraph honeycomb();

// Quotient of the standard square-grid bipartite graph in Z^2 (colors by
// parity) by the lattice (a,b)Z + (c,d)Z. Both generators must preserve the
// coloring: a+b and c+d even, determinant nonzero.
BipartiteTorusGraph gridQuotient(long long a, long long b, long long c, long long d);

// Catalog lookup by name used by the CLI: "honeycomb", "grid2" (the
// (2,0),(0,2) quotient, Newton polygon the area-2 square), "grid4"
// (the (4,0),(0,4) quotient, the doubled square), "grid11"
// (the (1,1),(1,-1) quotient).
BipartiteTorusGraph catalogGraph(const std::string& name);

} // namespace dimer
