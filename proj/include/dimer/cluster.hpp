#pragma once

#include <array>

#include "dimer/graph.hpp"
#include "dimer/quantum_torus.hpp"
#include "dimer/rational_expr.hpp"

namespace dimer {

// A seed: lattice with skew form and marked vectors. The form is integral
// here (it comes from the intersection pairing on closed cycles).
struct Seed {
    SkewForm form;                                // on Z^dim
    std::vector<std::vector<long long>> vectors;  // marked vectors e_i

    int dim() const { return form.dim(); }
    long long pairing(int i, int j) const { return form.pairInt(vectors[i], vectors[j]); }
};

// Marked vectors = face boundary classes (all faces; the omitted face's class
// is minus the sum of the others), form = epsilon on the homology basis.
Seed seed_from_graph(const BipartiteTorusGraph& g);

// Half reflection at e_k: e~_i = e_i + (e_i,e_k)_+ e_k for i != k, e~_k = -e_k.
Seed mutate_seed(const Seed& s, int k);

// Pullback of the cluster transformation at e_k on rational expressions in
// the basis characters X0..X{n-1}:
//   X_k -> X_k^{-1},  X_i -> X_i (1 + X_k^{-sgn(e_i,e_k)})^{-(e_i,e_k)}.
RationalExpr x_mutation_pullback(const RationalExpr& expr, const Seed& s, int k);

// The five face weights around a spider move, in the labeling where W1 and
// W3 gain the factor (1+W).
struct SpiderWeights {
    RationalExpr W, W1, W2, W3, W4;
};

// W' = 1/W, W1' = W1 (1+W), W2' = W2 (1+W^{-1})^{-1}, and likewise 3 / 4.
SpiderWeights spider_facemap(const SpiderWeights& w);

// Local projective invariants of the spider square: matchings of the inside
// graph leaving the boundary pair {i,j} to the outside, as functions of the
// six inside edge weights a..f (unmutated side) or A..F (mutated side).
std::array<RationalExpr, 6> spider_local_invariants(const std::array<RationalExpr, 6>& abcdef);
std::array<RationalExpr, 6> spider_local_invariants_primed(const std::array<RationalExpr, 6>& ABCDEF);

// Edge weights of the mutated inside graph (A..F) for which the local
// invariants agree projectively with the unmutated ones.
std::array<RationalExpr, 6> spider_edge_transport(const std::array<RationalExpr, 6>& abcdef);

// Quantum torus element together with a denominator polynomial in the single
// character X_{e_k}; represents num * den^{-1}.
struct QTRational {
    QuantumTorusElement num;
    QuantumTorusElement den;  // polynomial in one character direction, invertible
};

// Conjugation by the q-exponential of X_{e_k} (the finite product form of
// Ad_{Psi_q}): X_v picks up one factor (1 + q^{+-(2a-1)} X_{e_k}^{...}) per
// unit of the pairing (v, e_k).
QTRational quantum_mutation(const QuantumTorusElement& elem, const Seed& s, int k);

bool qtRationalEqual(const QTRational& a, const QTRational& b);

// Checks that all pairwise quantum commutators of the given elements vanish;
// returns the first offending pair if not.
struct CommutationReport {
    bool allCommute = true;
    int badA = -1, badB = -1;
};
CommutationReport check_commuting(const std::vector<QuantumTorusElement>& elems);

// A Casimir vector is central iff it pairs to zero with the whole lattice.
bool isCentralVector(const SkewForm& form, const std::vector<long long>& v);

// Log-canonical Poisson bracket {X_i, X_j} = (e_i, e_j) X_i X_j extended by
// Leibniz to rational expressions in the basis characters X0..X{n-1}.
RationalExpr poisson_bracket(const RationalExpr& f, const RationalExpr& g, const Seed& s);

// Classical bracket of two character sums over a common lattice: vanishes
// iff sum over term pairs of (u,v) X_{u+v} cancels.
bool classical_bracket_vanishes(const QuantumTorusElement& a, const QuantumTorusElement& b);

// The character monomial X_v in the variables X0..X{n-1}.
LaurentPoly characterMonomial(const std::vector<long long>& v, const std::string& prefix = "X");

} // namespace dimer
