#include "dimer/dimer_model.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "dimer/det.hpp"

namespace dimer {

std::vector<Matching> enumerate_matchings(const BipartiteTorusGraph& g) {
    std::vector<int> blacks, whites;
    for (int v = 0; v < g.numVertices(); ++v)
        (g.color(v) == Color::Black ? blacks : whites).push_back(v);
    std::vector<Matching> out;
    if (blacks.size() != whites.size()) return out;
    std::vector<char> whiteUsed(g.numVertices(), 0);
    Matching cur;
    auto rec = [&](auto&& self, size_t bi) -> void {
        if (bi == blacks.size()) {
            Matching m = cur;
            std::sort(m.begin(), m.end());
            out.push_back(std::move(m));
            return;
        }
        int b = blacks[bi];
        for (int e : g.rotation(b)) {
            int w = g.edge(e).white;
            if (whiteUsed[w]) continue;
            whiteUsed[w] = 1;
            cur.push_back(e);
            self(self, bi + 1);
            cur.pop_back();
            whiteUsed[w] = 0;
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

KasteleynSigns kasteleyn_signs(const BipartiteTorusGraph& g) {
    if (enumerate_matchings(g).empty())
        throw std::invalid_argument("kasteleyn_signs: graph admits no matching");
    int E = g.numEdges();
    int F = g.numFaces();
    // GF(2): x_e = 1 means sign -1. Row per face over odd-multiplicity edges.
    std::vector<std::vector<char>> rows(F, std::vector<char>(E + 1, 0));
    for (int f = 0; f < F; ++f) {
        std::map<int, int> mult;
        for (const Dart& d : g.faces()[f].darts) mult[d.edge]++;
        for (auto [e, m] : mult)
            if (m % 2) rows[f][e] = 1;
        size_t len = g.faces()[f].darts.size();
        rows[f][E] = static_cast<char>((len / 2 + 1) % 2);
    }
    // Gaussian elimination with pivots in edge order.
    std::vector<int> pivotRow(E, -1);
    int r = 0;
    for (int e = 0; e < E && r < F; ++e) {
        int pr = -1;
        for (int i = r; i < F; ++i)
            if (rows[i][e]) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        std::swap(rows[pr], rows[r]);
        for (int i = 0; i < F; ++i) {
            if (i != r && rows[i][e])
                for (int c = 0; c <= E; ++c) rows[i][c] ^= rows[r][c];
        }
        pivotRow[e] = r;
        ++r;
    }
    for (int i = r; i < F; ++i)
        if (rows[i][E]) throw std::logic_error("kasteleyn_signs: inconsistent face system");
    KasteleynSigns s;
    s.edgeSign.assign(E, 1);
    for (int e = 0; e < E; ++e)
        if (pivotRow[e] >= 0 && rows[pivotRow[e]][E]) s.edgeSign[e] = -1;
    // verify
    for (int f = 0; f < F; ++f) {
        size_t len = g.faces()[f].darts.size();
        int want = (len / 2 + 1) % 2 ? -1 : 1;
        if (faceSignProduct(g, s, f) != want)
            throw std::logic_error("kasteleyn_signs: face condition violated");
    }
    return s;
}

int faceSignProduct(const BipartiteTorusGraph& g, const KasteleynSigns& s, int face) {
    int p = 1;
    for (const Dart& d : g.faces()[face].darts) p *= s.edgeSign[d.edge];
    return p;
}

std::vector<LaurentPoly> formalEdgeWeights(const BipartiteTorusGraph& g) {
    std::vector<LaurentPoly> w;
    w.reserve(g.numEdges());
    for (int e = 0; e < g.numEdges(); ++e)
        w.push_back(LaurentPoly::variable("w" + std::to_string(e)));
    return w;
}

LaurentPoly partition_function(const BipartiteTorusGraph& g,
                               const std::vector<LaurentPoly>& weights,
                               const KasteleynSigns& signs) {
    std::vector<int> blacks, whites;
    for (int v = 0; v < g.numVertices(); ++v)
        (g.color(v) == Color::Black ? blacks : whites).push_back(v);
    if (blacks.size() != whites.size())
        throw std::invalid_argument("partition_function: unequal black/white counts");
    std::vector<int> bIndex(g.numVertices(), -1), wIndex(g.numVertices(), -1);
    for (size_t i = 0; i < blacks.size(); ++i) bIndex[blacks[i]] = static_cast<int>(i);
    for (size_t i = 0; i < whites.size(); ++i) wIndex[whites[i]] = static_cast<int>(i);
    size_t n = blacks.size();
    LPMatrix K(n, std::vector<LaurentPoly>(n));
    for (int e = 0; e < g.numEdges(); ++e) {
        const auto& E = g.edge(e);
        LaurentPoly zmono = LaurentPoly::monomial(
            {"z1", "z2"}, {static_cast<int>(E.disp[0]), static_cast<int>(E.disp[1])},
            signs.edgeSign[e]);
        if (signs.torusSign[0] < 0 && E.disp[0] % 2) zmono = -zmono;
        if (signs.torusSign[1] < 0 && E.disp[1] % 2) zmono = -zmono;
        K[bIndex[E.black]][wIndex[E.white]] += weights[e] * zmono;
    }
    return lp_det_sparse(K);
}

int matchingSign(const BipartiteTorusGraph& g, const Matching& m, const KasteleynSigns& signs) {
    std::vector<int> blacks, whites;
    for (int v = 0; v < g.numVertices(); ++v)
        (g.color(v) == Color::Black ? blacks : whites).push_back(v);
    std::vector<int> wIndex(g.numVertices(), -1);
    for (size_t i = 0; i < whites.size(); ++i) wIndex[whites[i]] = static_cast<int>(i);
    std::vector<int> bIndex(g.numVertices(), -1);
    for (size_t i = 0; i < blacks.size(); ++i) bIndex[blacks[i]] = static_cast<int>(i);
    // permutation black index -> white index
    std::vector<int> perm(blacks.size(), -1);
    int sign = 1;
    for (int e : m) {
        perm[bIndex[g.edge(e).black]] = wIndex[g.edge(e).white];
        sign *= signs.edgeSign[e];
        if (signs.torusSign[0] < 0 && g.edge(e).disp[0] % 2) sign = -sign;
        if (signs.torusSign[1] < 0 && g.edge(e).disp[1] % 2) sign = -sign;
    }
    for (size_t i = 0; i < perm.size(); ++i)
        for (size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) sign = -sign;
    return sign;
}

LaurentPoly matchingMonomial(const BipartiteTorusGraph& g, const Matching& m,
                             const std::vector<LaurentPoly>& weights) {
    LaurentPoly p(Rational(1));
    Disp d{0, 0};
    for (int e : m) {
        p *= weights[e];
        d = d + g.edge(e).disp;
    }
    return p * LaurentPoly::monomial({"z1", "z2"}, {static_cast<int>(d[0]), static_cast<int>(d[1])},
                                     1);
}

// --------------------------------------------------------------------------
// alpha-deformation

namespace {

// Angular comparison of nonzero lattice vectors, counterclockwise from the
// positive x-axis.
int angleHalf(Disp v) { return (v[1] > 0 || (v[1] == 0 && v[0] > 0)) ? 0 : 1; }

bool angleLess(Disp a, Disp b) {
    int ha = angleHalf(a), hb = angleHalf(b);
    if (ha != hb) return ha < hb;
    long long cr = a[0] * b[1] - a[1] * b[0];
    return cr > 0;
}

// Transverse position of a strand of class p: average of (p_y, -p_x) . offset
// over its darts, well defined modulo 1.
Rational transversePos(const BipartiteTorusGraph& g, const ZigZag& z) {
    Disp off{0, 0};
    long long s = 0;
    for (const Dart& d : z.darts) {
        s += z.cls[1] * off[0] - z.cls[0] * off[1];
        off = off + g.dartDisp(d);
    }
    Rational t = rat(s, static_cast<long long>(z.darts.size()));
    // reduce mod 1 into [0,1)
    mpz_class fl = t.get_num() / t.get_den();
    if (t < 0 && fl * t.get_den() != t.get_num()) fl -= 1;
    return t - Rational(fl);
}

Rational frac(const Rational& x) {
    mpz_class fl = x.get_num() / x.get_den();
    Rational f = x - Rational(fl);
    if (f < 0) f += 1;
    return f;
}

std::vector<int> zigzagCircularOrder(const BipartiteTorusGraph& g) {
    const auto& zz = g.zigzags();
    std::vector<int> order(zz.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<Rational> tpos(zz.size());
    for (size_t i = 0; i < zz.size(); ++i) tpos[i] = transversePos(g, zz[i]);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        Disp ca = zz[a].cls, cb = zz[b].cls;
        if (ca != cb) {
            long long cr = ca[0] * cb[1] - ca[1] * cb[0];
            if (cr == 0) return angleHalf(ca) < angleHalf(cb);  // opposite classes
            return angleLess(ca, cb);
        }
        if (tpos[a] != tpos[b]) return tpos[a] < tpos[b];
        return a < b;
    });
    return order;
}

bool validatePhi(const BipartiteTorusGraph& g, const std::vector<Rational>& phi) {
    std::vector<Rational> sum(g.numVertices(), 0);
    for (int e = 0; e < g.numEdges(); ++e) {
        sum[g.edge(e).black] += phi[e];
        sum[g.edge(e).white] += phi[e];
    }
    for (int v = 0; v < g.numVertices(); ++v)
        if (sum[v] != 1) return false;
    return true;
}

std::vector<Rational> phiFromAlpha(const BipartiteTorusGraph& g,
                                   const std::vector<Rational>& alpha) {
    std::vector<Rational> phi(g.numEdges());
    for (int e = 0; e < g.numEdges(); ++e) {
        int zr = g.zigzagThrough(Dart{e, false});  // white precedes black
        int zl = g.zigzagThrough(Dart{e, true});
        phi[e] = frac(alpha[zr] - alpha[zl]);
    }
    return phi;
}

// phi of the collapsed vertex map: cut the circular order after position
// cutPos; phi(E) = 1 iff the ccw arc from alpha_l to alpha_r crosses the cut.
std::vector<Rational> phiFromCut(const BipartiteTorusGraph& g, const std::vector<int>& order,
                                 size_t cutPos) {
    std::vector<int> linear(g.zigzags().size());
    size_t n = order.size();
    for (size_t i = 0; i < n; ++i) linear[order[(cutPos + 1 + i) % n]] = static_cast<int>(i);
    std::vector<Rational> phi(g.numEdges());
    for (int e = 0; e < g.numEdges(); ++e) {
        int zr = g.zigzagThrough(Dart{e, false});
        int zl = g.zigzagThrough(Dart{e, true});
        phi[e] = linear[zl] > linear[zr] ? 1 : 0;
    }
    return phi;
}

} // namespace

Cycle AlphaMap::chain() const {
    if (!integral) throw std::logic_error("AlphaMap::chain requires integral phi");
    Cycle c;
    for (size_t e = 0; e < phi.size(); ++e)
        if (phi[e] == 1) c.add(static_cast<int>(e), 1);
    return c;
}

AlphaMap alpha_phi(const BipartiteTorusGraph& g) {
    auto order = zigzagCircularOrder(g);
    size_t n = order.size();
    // Default cut: after the zig-zag of lexicographically smallest class.
    size_t cut = 0;
    for (size_t i = 1; i < n; ++i) {
        const auto &a = g.zigzags()[order[i]], &b = g.zigzags()[order[cut]];
        if (a.cls < b.cls || (a.cls == b.cls && order[i] < order[cut])) cut = i;
    }
    // The derived phi must satisfy d(phi) = sum sgn(v)[v]. If the transverse
    // positions tie inside a class the within-class order can come out wrong,
    // so search cuts first and, failing that, within-class permutations.
    auto tryOrder = [&](const std::vector<int>& ord) -> std::optional<AlphaMap> {
        for (size_t attempt = 0; attempt < n; ++attempt) {
            size_t c = (cut + attempt) % n;
            auto phi = phiFromCut(g, ord, c);
            if (validatePhi(g, phi)) {
                AlphaMap m;
                m.order = ord;
                m.alpha.assign(n, 0);
                m.phi = std::move(phi);
                m.integral = true;
                return m;
            }
        }
        return std::nullopt;
    };
    if (auto m = tryOrder(order)) return *m;
    // group same-class blocks and permute each block independently
    std::vector<std::pair<size_t, size_t>> blocks;  // [begin, end)
    for (size_t i = 0; i < n;) {
        size_t j = i + 1;
        while (j < n && g.zigzags()[order[j]].cls == g.zigzags()[order[i]].cls) ++j;
        if (j - i > 1) blocks.push_back({i, j});
        i = j;
    }
    std::vector<int> ord = order;
    size_t budget = 100000;
    auto permuteBlocks = [&](auto&& self, size_t bi) -> std::optional<AlphaMap> {
        if (budget-- == 0) return std::nullopt;
        if (bi == blocks.size()) return tryOrder(ord);
        auto [lo, hi] = blocks[bi];
        std::sort(ord.begin() + lo, ord.begin() + hi);
        do {
            if (auto m = self(self, bi + 1)) return m;
        } while (std::next_permutation(ord.begin() + lo, ord.begin() + hi));
        return std::nullopt;
    };
    if (auto m = permuteBlocks(permuteBlocks, 0)) return *m;
    throw std::logic_error("alpha_phi: no valid cut found (zig-zag order unresolved)");
}

AlphaMap alpha_phi(const BipartiteTorusGraph& g, const std::vector<Rational>& alphaByZigzag) {
    auto order = zigzagCircularOrder(g);
    size_t n = order.size();
    if (alphaByZigzag.size() != n) throw std::invalid_argument("alpha_phi: wrong value count");
    // circular-order preserving: consecutive ccw gaps wind exactly once
    Rational winding = 0;
    for (size_t i = 0; i < n; ++i)
        winding += frac(alphaByZigzag[order[(i + 1) % n]] - alphaByZigzag[order[i]]);
    if (winding != 1) throw std::invalid_argument("alpha_phi: map is not circular-order preserving");
    AlphaMap m;
    m.order = order;
    m.alpha = alphaByZigzag;
    m.phi = phiFromAlpha(g, alphaByZigzag);
    if (!validatePhi(g, m.phi)) throw std::invalid_argument("alpha_phi: d(phi) check failed");
    m.integral = std::all_of(m.phi.begin(), m.phi.end(),
                             [](const Rational& r) { return r == 0 || r == 1; });
    return m;
}

Cycle matching_class_chain(const BipartiteTorusGraph& g, const Matching& m, const AlphaMap& phi) {
    if (!phi.integral) throw std::invalid_argument("matching_class_chain: phi must be integral");
    (void)g;
    Cycle c;
    for (int e : m) c.add(e, 1);
    Cycle p = phi.chain();
    c += p.scaled(-1);
    return c;
}

// --------------------------------------------------------------------------

HamiltonianSet hamiltonians(const BipartiteTorusGraph& g) { return hamiltonians(g, alpha_phi(g)); }

HamiltonianSet hamiltonians(const BipartiteTorusGraph& g, const AlphaMap& phi) {
    HomologyBasis basis(g);
    HamiltonianSet hs;
    hs.form = std::make_shared<const SkewForm>(basis.epsilonForm());
    hs.dim = basis.dim();
    auto signs = kasteleyn_signs(g);
    auto matchings = enumerate_matchings(g);
    if (matchings.empty()) throw std::invalid_argument("hamiltonians: no matchings");

    std::map<Disp, std::vector<std::vector<long long>>> byClass;
    std::vector<LatticePoint> classPoints;
    for (const auto& m : matchings) {
        Cycle c = matching_class_chain(g, m, phi);
        auto coords = basis.decompose(c);
        Disp a{coords[hs.dim - 2], coords[hs.dim - 1]};
        int s = matchingSign(g, m, signs);
        auto [it, inserted] = hs.classSign.emplace(a, s);
        if (!inserted && it->second != s)
            throw std::logic_error("hamiltonians: sign not constant on a homology class");
        byClass[a].push_back(std::move(coords));
        classPoints.push_back({a[0], a[1]});
    }
    hs.polygon = NewtonPolygon::fromPoints(classPoints);

    // interior test against the un-normalized hull of the class points
    auto hull = NewtonPolygon::fromPoints(classPoints);
    LatticePoint base{0, 0};
    {
        // fromPoints translates the lex-min point to the origin; recover it
        std::vector<LatticePoint> sorted = classPoints;
        std::sort(sorted.begin(), sorted.end());
        base = sorted[0];
    }
    auto isInterior = [&](Disp a) {
        LatticePoint p{a[0] - base[0], a[1] - base[1]};
        const auto& vs = hull.vertices();
        if (vs.size() < 3) return false;
        for (size_t i = 0; i < vs.size(); ++i) {
            const auto& u = vs[i];
            const auto& w = vs[(i + 1) % vs.size()];
            long long cr = (w[0] - u[0]) * (p[1] - u[1]) - (w[1] - u[1]) * (p[0] - u[0]);
            if (cr <= 0) return false;
        }
        return true;
    };

    for (auto& [a, vecs] : byClass) {
        QuantumTorusElement h(hs.form);
        for (auto& v : vecs) h.addTerm(v, QLaurent{Rational(1)});
        hs.classCount[a] = static_cast<long long>(vecs.size());
        if (isInterior(a)) {
            // a Hamiltonian is a sum of distinct characters with coefficient 1
            if (h.termCount() != vecs.size())
                throw std::logic_error("hamiltonians: repeated character in an interior class");
            hs.hamiltonians.emplace(a, std::move(h));
        } else {
            hs.boundaryParts.emplace(a, std::move(h));
        }
    }
    for (const auto& z : g.zigzags()) hs.casimirs.push_back(basis.decompose(z.chain()));
    return hs;
}

// --------------------------------------------------------------------------

std::vector<std::vector<Rational>> matching_polytope_vertices(const BipartiteTorusGraph& g) {
    int E = g.numEdges();
    if (E > 16) throw std::invalid_argument("matching_polytope_vertices: graph too large");
    // Equality system A omega = 1 (one row per vertex).
    int V = g.numVertices();
    std::vector<std::vector<Rational>> A(V, std::vector<Rational>(E + 1, 0));
    for (int e = 0; e < E; ++e) {
        A[g.edge(e).black][e] = 1;
        A[g.edge(e).white][e] = 1;
    }
    for (int v = 0; v < V; ++v) A[v][E] = 1;

    auto solveWithFixed = [&](const std::vector<std::pair<int, Rational>>& fixed)
        -> std::optional<std::vector<Rational>> {
        std::vector<std::vector<Rational>> M = A;
        for (auto [e, val] : fixed) {
            std::vector<Rational> row(E + 1, 0);
            row[e] = 1;
            row[E] = val;
            M.push_back(row);
        }
        // Gaussian elimination
        int rows = static_cast<int>(M.size());
        std::vector<int> pivotCol;
        int r = 0;
        for (int c = 0; c < E && r < rows; ++c) {
            int pr = -1;
            for (int i = r; i < rows; ++i)
                if (M[i][c] != 0) {
                    pr = i;
                    break;
                }
            if (pr < 0) continue;
            std::swap(M[pr], M[r]);
            Rational inv = 1 / M[r][c];
            for (int j = 0; j <= E; ++j) M[r][j] *= inv;
            for (int i = 0; i < rows; ++i) {
                if (i == r || M[i][c] == 0) continue;
                Rational f = M[i][c];
                for (int j = 0; j <= E; ++j) M[i][j] -= f * M[r][j];
            }
            pivotCol.push_back(c);
            ++r;
        }
        for (int i = r; i < rows; ++i)
            if (M[i][E] != 0) return std::nullopt;
        if (static_cast<int>(pivotCol.size()) < E) return std::nullopt;  // underdetermined
        std::vector<Rational> x(E, 0);
        for (int i = 0; i < static_cast<int>(pivotCol.size()); ++i) x[pivotCol[i]] = M[i][E];
        for (const Rational& v : x)
            if (v < 0 || v > 1) return std::nullopt;
        return x;
    };

    // rank of the equality system
    int rank;
    {
        std::vector<std::vector<Rational>> M = A;
        int rows = static_cast<int>(M.size());
        rank = 0;
        for (int c = 0; c < E && rank < rows; ++c) {
            int pr = -1;
            for (int i = rank; i < rows; ++i)
                if (M[i][c] != 0) {
                    pr = i;
                    break;
                }
            if (pr < 0) continue;
            std::swap(M[pr], M[rank]);
            for (int i = 0; i < rows; ++i) {
                if (i == rank || M[i][c] == 0) continue;
                Rational f = M[i][c] / M[rank][c];
                for (int j = 0; j <= E; ++j) M[i][j] -= f * M[rank][j];
            }
            ++rank;
        }
    }
    int need = E - rank;
    if (need > 6) throw std::invalid_argument("matching_polytope_vertices: dimension too high");

    std::set<std::vector<Rational>> verts;
    std::vector<int> comb(need);
    std::iota(comb.begin(), comb.end(), 0);
    auto tryCombo = [&](const std::vector<int>& edgesFixed) {
        for (int bits = 0; bits < (1 << need); ++bits) {
            std::vector<std::pair<int, Rational>> fixed;
            for (int k = 0; k < need; ++k)
                fixed.push_back({edgesFixed[k], (bits >> k) & 1 ? 1 : 0});
            auto x = solveWithFixed(fixed);
            if (x) verts.insert(*x);
        }
    };
    if (need == 0) {
        auto x = solveWithFixed({});
        if (x) verts.insert(*x);
    } else {
        std::vector<int> idx(need);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            tryCombo(idx);
            int k = need - 1;
            while (k >= 0 && idx[k] == E - need + k) --k;
            if (k < 0) break;
            ++idx[k];
            for (int j = k + 1; j < need; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return {verts.begin(), verts.end()};
}

bool inMatchingPolytope(const BipartiteTorusGraph& g, const std::vector<Rational>& omega) {
    for (const Rational& w : omega)
        if (w < 0 || w > 1) return false;
    std::vector<Rational> sum(g.numVertices(), 0);
    for (int e = 0; e < g.numEdges(); ++e) {
        sum[g.edge(e).black] += omega[e];
        sum[g.edge(e).white] += omega[e];
    }
    for (int v = 0; v < g.numVertices(); ++v)
        if (sum[v] != 1) return false;
    return true;
}

long long chainZigzagPairing(const BipartiteTorusGraph& g, const Cycle& c, const ZigZag& z) {
    (void)g;
    long long s = 0;
    for (const Dart& d : z.darts) {
        auto it = c.coef.find(d.edge);
        if (it == c.coef.end()) continue;
        s += d.bw ? -it->second : it->second;
    }
    return s;
}

bool newton_check(const BipartiteTorusGraph& g, const NewtonPolygon& expected) {
    auto signs = kasteleyn_signs(g);
    auto weights = formalEdgeWeights(g);
    LaurentPoly p = partition_function(g, weights, signs);
    // project onto z1,z2 support
    std::vector<LatticePoint> pts;
    {
        // exponents of z1,z2 within the full variable list
        const auto& vars = p.vars();
        int i1 = -1, i2 = -1;
        for (size_t i = 0; i < vars.size(); ++i) {
            if (vars[i] == "z1") i1 = static_cast<int>(i);
            if (vars[i] == "z2") i2 = static_cast<int>(i);
        }
        for (const auto& e : p.support())
            pts.push_back({i1 >= 0 ? e[i1] : 0, i2 >= 0 ? e[i2] : 0});
    }
    if (NewtonPolygon::fromPoints(pts) != expected) return false;

    // zig-zag inequality set
    auto phi = alpha_phi(g);
    Cycle omega0 = phi.chain();
    for (const auto& m : enumerate_matchings(g)) {
        Cycle gamma = matching_class_chain(g, m, phi);
        for (const auto& z : g.zigzags()) {
            long long lhs = chainZigzagPairing(g, gamma, z);
            long long rhs = static_cast<long long>(z.darts.size()) / 2 -
                            chainZigzagPairing(g, omega0, z);
            if (lhs > rhs) return false;
        }
    }
    return true;
}

} // namespace dimer
