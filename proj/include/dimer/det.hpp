#pragma once

#include <vector>

#include "dimer/laurent.hpp"

namespace dimer {

using LPMatrix = std::vector<std::vector<LaurentPoly>>;

// Exact determinant of a square matrix of Laurent polynomials.
// Cofactor expansion for small n, fraction-free Bareiss elimination (after
// clearing Laurent denominators row by row) for the rest.
LaurentPoly lp_det(const LPMatrix& m);

// Determinant by Laplace expansion along rows with memoization on column
// subsets. Exact; much faster than Bareiss for the sparse Kasteleyn matrices
// (n <= 24).
LaurentPoly lp_det_sparse(const LPMatrix& m);

} // namespace dimer
