#include "dimer/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace dimer {

Cycle ZigZag::chain() const {
    Cycle c;
    for (const Dart& d : darts) c.add(d.edge, d.bw ? 1 : -1);
    return c;
}

BipartiteTorusGraph::BipartiteTorusGraph(std::vector<Color> colors, std::vector<Edge> edges,
                                         std::vector<std::vector<int>> rot)
    : colors_(std::move(colors)), edges_(std::move(edges)), rot_(std::move(rot)) {
    rotPos_.resize(colors_.size());
    for (size_t v = 0; v < rot_.size(); ++v)
        for (size_t i = 0; i < rot_[v].size(); ++i) {
            if (!rotPos_[v].emplace(rot_[v][i], static_cast<int>(i)).second)
                throw std::invalid_argument("edge repeated in rotation of vertex " +
                                            std::to_string(v));
        }
    validate();
    traceFaces();
    traceZigzags();
}

void BipartiteTorusGraph::validate() const {
    std::vector<int> deg(colors_.size(), 0);
    for (const auto& e : edges_) {
        if (e.black < 0 || e.black >= numVertices() || e.white < 0 || e.white >= numVertices())
            throw std::invalid_argument("edge endpoint out of range");
        if (colors_[e.black] != Color::Black || colors_[e.white] != Color::White)
            throw std::invalid_argument("edge must join a black and a white vertex");
        ++deg[e.black];
        ++deg[e.white];
    }
    if (rot_.size() != colors_.size()) throw std::invalid_argument("rotation size mismatch");
    for (size_t v = 0; v < rot_.size(); ++v) {
        if (static_cast<int>(rot_[v].size()) != deg[v])
            throw std::invalid_argument("rotation of vertex " + std::to_string(v) +
                                        " does not list all incident edges");
        for (int e : rot_[v]) {
            if (e < 0 || e >= numEdges()) throw std::invalid_argument("rotation edge out of range");
            if (edges_[e].black != static_cast<int>(v) && edges_[e].white != static_cast<int>(v))
                throw std::invalid_argument("rotation lists a non-incident edge");
        }
    }
}

Dart BipartiteTorusGraph::faceNext(Dart d) const {
    int v = head(d);
    int pos = rotPos_[v].at(d.edge);
    int e2 = rot_[v][(pos + 1) % rot_[v].size()];
    return Dart{e2, colors_[v] == Color::Black};
}

Dart BipartiteTorusGraph::zigzagNext(Dart d) const {
    int v = head(d);
    int pos = rotPos_[v].at(d.edge);
    int n = static_cast<int>(rot_[v].size());
    int e2 = colors_[v] == Color::Black ? rot_[v][(pos + 1) % n] : rot_[v][(pos - 1 + n) % n];
    return Dart{e2, colors_[v] == Color::Black};
}

void BipartiteTorusGraph::traceFaces() {
    size_t nd = 2 * edges_.size();
    faceOf_.assign(nd, -1);
    faces_.clear();
    for (size_t i = 0; i < nd; ++i) {
        if (faceOf_[i] >= 0) continue;
        Dart start{static_cast<int>(i / 2), i % 2 == 0};
        Face f;
        Disp total{0, 0};
        Dart d = start;
        do {
            faceOf_[dartIndex(d)] = static_cast<int>(faces_.size());
            f.darts.push_back(d);
            total = total + dartDisp(d);
            d = faceNext(d);
        } while (!(d == start));
        if (total[0] != 0 || total[1] != 0)
            throw std::invalid_argument("face with nonzero displacement: not a disk embedding");
        faces_.push_back(std::move(f));
    }
    long long euler = static_cast<long long>(numVertices()) - numEdges() + numFaces();
    if (euler != 0)
        throw std::invalid_argument("V - E + F = " + std::to_string(euler) + ", expected 0");
}

void BipartiteTorusGraph::traceZigzags() {
    size_t nd = 2 * edges_.size();
    zzOf_.assign(nd, -1);
    zigzags_.clear();
    for (size_t i = 0; i < nd; ++i) {
        if (zzOf_[i] >= 0) continue;
        Dart start{static_cast<int>(i / 2), i % 2 == 0};
        ZigZag z;
        Disp total{0, 0};
        Dart d = start;
        do {
            zzOf_[dartIndex(d)] = static_cast<int>(zigzags_.size());
            z.darts.push_back(d);
            total = total + dartDisp(d);
            d = zigzagNext(d);
        } while (!(d == start));
        z.cls = total;
        zigzags_.push_back(std::move(z));
    }
}

Cycle BipartiteTorusGraph::faceCycle(int f) const {
    Cycle c;
    for (const Dart& d : faces_[f].darts) c.add(d.edge, d.bw ? 1 : -1);
    return c;
}

bool BipartiteTorusGraph::isConnected() const {
    if (colors_.empty()) return true;
    std::vector<char> seen(colors_.size(), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int e : rot_[v]) {
            int w = edges_[e].black == v ? edges_[e].white : edges_[e].black;
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                q.push(w);
            }
        }
    }
    return count == numVertices();
}

std::string BipartiteTorusGraph::describe() const {
    std::ostringstream os;
    os << "V=" << numVertices() << " E=" << numEdges() << " F=" << numFaces()
       << " zigzags=" << zigzags_.size();
    return os.str();
}

// ---------------------------------------------------------------------------

HomologyBasis::HomologyBasis(const BipartiteTorusGraph& g) : g_(g) {
    int F = g.numFaces();
    omitted_ = F - 1;
    facePlus_.assign(g.numEdges(), -1);
    faceMinus_.assign(g.numEdges(), -1);
    for (int e = 0; e < g.numEdges(); ++e) {
        facePlus_[e] = g.faceOf(Dart{e, true});
        faceMinus_[e] = g.faceOf(Dart{e, false});
    }

    // BFS spanning tree with fundamental-domain lift offsets.
    int V = g.numVertices();
    std::vector<char> seen(V, 0);
    std::vector<Disp> lift(V, Disp{0, 0});
    std::vector<int> parentEdge(V, -1);
    std::queue<int> q;
    if (V > 0) {
        q.push(0);
        seen[0] = 1;
    }
    std::vector<char> inTree(g.numEdges(), 0);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int e : g.rotation(v)) {
            const auto& E = g.edge(e);
            int w = E.black == v ? E.white : E.black;
            if (seen[w]) continue;
            seen[w] = 1;
            inTree[e] = 1;
            parentEdge[w] = e;
            lift[w] = E.black == v ? lift[v] + E.disp : lift[v] - E.disp;
            q.push(w);
        }
    }
    for (int v = 0; v < V; ++v)
        if (!seen[v]) throw std::invalid_argument("homology basis requires a connected graph");

    // Chain of tree edges from one vertex to another.
    auto treePath = [&](int from, int to) {
        // returns chain of tree edges from 'from' to 'to'
        std::vector<int> fa, ta;
        for (int u = from; u >= 0;) {
            fa.push_back(u);
            u = parentEdge[u] >= 0
                    ? (g.edge(parentEdge[u]).black == u ? g.edge(parentEdge[u]).white
                                                        : g.edge(parentEdge[u]).black)
                    : -1;
        }
        for (int u = to; u >= 0;) {
            ta.push_back(u);
            u = parentEdge[u] >= 0
                    ? (g.edge(parentEdge[u]).black == u ? g.edge(parentEdge[u]).white
                                                        : g.edge(parentEdge[u]).black)
                    : -1;
        }
        // find lowest common ancestor by trimming common suffix
        int i = static_cast<int>(fa.size()) - 1, j = static_cast<int>(ta.size()) - 1;
        while (i > 0 && j > 0 && fa[i - 1] == ta[j - 1]) {
            --i;
            --j;
        }
        Cycle c;
        auto addStep = [&](int u) {
            int pe = parentEdge[u];
            const auto& P = g.edge(pe);
            bool fromWhite = P.white == u;  // step u -> parent
            // traversal u->parent: if u is white, direction white->black = -1
            c.add(pe, fromWhite ? -1 : 1);
        };
        // from 'from' up to LCA (direction of travel), then LCA down to 'to'
        for (int k = 0; k < i; ++k) addStep(fa[k]);
        Cycle down;
        for (int k = 0; k < j; ++k) {
            int u = ta[k];
            int pe = parentEdge[u];
            const auto& P = g.edge(pe);
            bool fromWhite = P.white == u;
            down.add(pe, fromWhite ? 1 : -1);  // parent -> u
        }
        c += down;
        return c;
    };

    // Fundamental cycles of non-tree edges; their torus classes generate Z^2.
    std::vector<Cycle> fund;
    std::vector<Disp> fundCls;
    for (int e = 0; e < g.numEdges(); ++e) {
        if (inTree[e]) continue;
        const auto& E = g.edge(e);
        Cycle c;
        c.add(e, 1);
        c += treePath(E.white, E.black);
        fund.push_back(std::move(c));
        fundCls.push_back(lift[E.black] + E.disp - lift[E.white]);
    }
    // Row-reduce the class vectors over Z while combining the cycles, ending
    // with chains of classes (d1, 0) and (*, d2); d1 = d2 = 1 on the torus.
    std::vector<std::pair<Disp, Cycle>> rows;
    for (size_t i = 0; i < fund.size(); ++i)
        if (fundCls[i][0] != 0 || fundCls[i][1] != 0) rows.push_back({fundCls[i], fund[i]});
    auto reduceCol = [&](size_t start, int col) -> std::optional<size_t> {
        std::optional<size_t> pivot;
        for (size_t i = start; i < rows.size(); ++i) {
            if (rows[i].first[col] == 0) continue;
            if (!pivot) {
                pivot = i;
                continue;
            }
            // gcd step between pivot and row i
            while (rows[i].first[col] != 0) {
                long long q = rows[*pivot].first[col] / rows[i].first[col];
                rows[*pivot].first = rows[*pivot].first - q * rows[i].first;
                rows[*pivot].second += rows[i].second.scaled(-q);
                std::swap(rows[*pivot], rows[i]);
            }
        }
        if (pivot) std::swap(rows[start], rows[*pivot]);
        return pivot ? std::optional<size_t>(start) : std::nullopt;
    };
    auto p0 = reduceCol(0, 0);
    auto p1 = reduceCol(p0 ? 1 : 0, 1);
    if (!p0 || !p1 || std::abs(rows[*p0].first[0]) != 1 || std::abs(rows[*p1].first[1]) != 1)
        throw std::logic_error("fundamental cycles do not generate H1 of the torus");
    // rows[*p1] has class (a, 1) up to signs; clean up to (0,1) and (1,0).
    Cycle c0 = rows[*p0].second.scaled(rows[*p0].first[0]);  // class (1, t)
    Disp d0 = rows[*p0].first[0] * rows[*p0].first;
    Cycle c1 = rows[*p1].second.scaled(rows[*p1].first[1]);  // class (a, 1)
    Disp d1 = rows[*p1].first[1] * rows[*p1].first;
    c0 += c1.scaled(-d0[1]);
    d0 = d0 - d0[1] * d1;
    c1 += c0.scaled(-d1[0]);
    g1_ = std::move(c0);
    g2_ = std::move(c1);

    for (int f = 0; f < F - 1; ++f) basis_.push_back(g.faceCycle(f));
    basis_.push_back(g1_);
    basis_.push_back(g2_);
}

bool HomologyBasis::isClosed(const Cycle& z) const {
    std::map<int, long long> boundary;
    for (const auto& [e, c] : z.coef) {
        boundary[g_.edge(e).white] += c;
        boundary[g_.edge(e).black] -= c;
    }
    for (const auto& [v, b] : boundary)
        if (b != 0) return false;
    return true;
}

Disp HomologyBasis::torusClass(const Cycle& z) const {
    Disp d{0, 0};
    for (const auto& [e, c] : z.coef) d = d + c * g_.edge(e).disp;
    return d;
}

std::vector<long long> HomologyBasis::decompose(const Cycle& z) const {
    if (!isClosed(z)) throw std::invalid_argument("decompose: chain is not closed");
    Disp t = torusClass(z);
    Cycle rest = z;
    rest += g1_.scaled(-t[0]);
    rest += g2_.scaled(-t[1]);
    // rest lies in the span of face boundaries; solve by dual-graph BFS with
    // n[omitted] = 0 and n[facePlus(e)] - n[faceMinus(e)] = rest_e.
    int F = g_.numFaces();
    std::vector<long long> n(F, 0);
    std::vector<char> known(F, 0);
    known[omitted_] = 1;
    std::queue<int> q;
    q.push(omitted_);
    auto coefOf = [&](int e) {
        auto it = rest.coef.find(e);
        return it == rest.coef.end() ? 0LL : it->second;
    };
    while (!q.empty()) {
        int f = q.front();
        q.pop();
        for (int e = 0; e < g_.numEdges(); ++e) {
            int fp = facePlus_[e], fm = faceMinus_[e];
            if (fp == f && !known[fm]) {
                n[fm] = n[fp] - coefOf(e);
                known[fm] = 1;
                q.push(fm);
            } else if (fm == f && !known[fp]) {
                n[fp] = n[fm] + coefOf(e);
                known[fp] = 1;
                q.push(fp);
            }
        }
    }
    for (int f = 0; f < F; ++f)
        if (!known[f]) throw std::logic_error("dual graph not connected");
    // verify
    for (int e = 0; e < g_.numEdges(); ++e)
        if (n[facePlus_[e]] - n[faceMinus_[e]] != coefOf(e))
            throw std::logic_error("decompose: chain not in homology lattice");
    std::vector<long long> coords;
    coords.reserve(F + 1);
    for (int f = 0; f < F; ++f)
        if (f != omitted_) coords.push_back(n[f]);
    coords.push_back(t[0]);
    coords.push_back(t[1]);
    return coords;
}

SkewForm HomologyBasis::epsilonForm() const {
    int n = dim();
    SkewForm form(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            long long t = intersection_form_twice(g_, basis_[i], basis_[j]);
            if (t % 2 != 0) throw std::logic_error("epsilon not integral on basis cycles");
            form.setTwice(i, j, t);
        }
    return form;
}

// ---------------------------------------------------------------------------

long long localPairingTwice(const std::vector<long long>& a, const std::vector<long long>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("local pairing arity mismatch");
    long long sa = 0, sb = 0;
    for (auto v : a) sa += v;
    for (auto v : b) sb += v;
    if (sa != 0 || sb != 0) throw std::invalid_argument("local pairing needs degree-zero vectors");
    long long s = 0;
    size_t n = a.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) s += a[i] * b[j] - a[j] * b[i];
    return s;
}

Rational local_pairing(const std::vector<long long>& a, const std::vector<long long>& b) {
    return rat(localPairingTwice(a, b), 2);
}

long long intersection_form_twice(const BipartiteTorusGraph& g, const Cycle& a, const Cycle& b) {
    // Local vectors at each vertex: for a closed chain, coefficient of the
    // outward dart at v is +c_e at the black end and -c_e at the white end.
    auto localVec = [&](const Cycle& z, int v) {
        const auto& rot = g.rotation(v);
        std::vector<long long> l(rot.size(), 0);
        long long sgn = g.color(v) == Color::Black ? 1 : -1;
        for (size_t i = 0; i < rot.size(); ++i) {
            auto it = z.coef.find(rot[i]);
            if (it != z.coef.end()) l[i] = sgn * it->second;
        }
        return l;
    };
    // vertices touched by both chains
    std::vector<char> touchA(g.numVertices(), 0), touchB(g.numVertices(), 0);
    for (const auto& [e, c] : a.coef) {
        touchA[g.edge(e).black] = 1;
        touchA[g.edge(e).white] = 1;
    }
    for (const auto& [e, c] : b.coef) {
        touchB[g.edge(e).black] = 1;
        touchB[g.edge(e).white] = 1;
    }
    // Rotations are stored in surface-ccw order; the corner enumeration the
    // local pairing refers to runs the other way, hence the reversed local
    // vectors. This normalization makes the face-pair values come out as
    // delta_{E;F1,F2} = +1 when the b->w orientation of the shared edge
    // agrees with the ccw boundary of F1.
    long long total = 0;
    for (int v = 0; v < g.numVertices(); ++v) {
        if (!touchA[v] || !touchB[v]) continue;
        auto la = localVec(a, v), lb = localVec(b, v);
        std::reverse(la.begin(), la.end());
        std::reverse(lb.begin(), lb.end());
        long long d = localPairingTwice(la, lb);
        total += (g.color(v) == Color::White ? 1 : -1) * d;
    }
    return total;
}

Rational intersection_form(const BipartiteTorusGraph& g, const Cycle& a, const Cycle& b) {
    return rat(intersection_form_twice(g, a, b), 2);
}

SkewForm face_epsilon_matrix(const BipartiteTorusGraph& g) {
    return HomologyBasis(g).epsilonForm();
}

} // namespace dimer
