#include "dimer/synthesis.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

namespace dimer {

// ===========================================================================
// Geodesic boundary data

GeodesicBoundary geodesic_boundary_data(const NewtonPolygon& n) {
    if (n.isDegenerate()) throw std::invalid_argument("geodesic data needs positive area");
    auto loops = n.boundaryEdges();
    int L = static_cast<int>(loops.size());

    // One straight geodesic per primitive boundary vector, through a base
    // point chosen so that all boundary crossings are distinct.
    struct Crossing {
        int loop;
        bool vertical;  // crosses a vertical line of the unit grid
        bool positive;  // direction of crossing (+x or +y)
        Rational pos;   // coordinate along the crossed line, in [0,1)
        Rational time;  // parameter along the loop
    };
    auto frac1 = [](Rational x) {
        mpz_class fl = x.get_num() / x.get_den();
        Rational f = x - Rational(fl);
        if (f < 0) f += 1;
        return f;
    };

    for (long long P = 2 * L + 3;; P += 2) {
        std::vector<std::vector<Crossing>> perLoop(L);
        bool clash = false;
        std::set<Rational> seenV, seenH;
        for (int j = 0; j < L && !clash; ++j) {
            long long p = loops[j][0], q = loops[j][1];
            // base points spread quadratically so no two loops keep a common
            // linear relation between their coordinates
            Rational a = rat(2 * j + 1, 2 * L * P);
            Rational bx = a, by = a * a;
            // crossings with vertical lines: bx + t p integer
            for (long long k = 0; k < std::abs(p); ++k) {
                Rational t = (rat(p > 0 ? k + 1 : -k) - bx) / rat(p);
                Rational y = frac1(by + t * rat(q));
                if (y == 0 || !seenV.insert(y).second) clash = true;
                perLoop[j].push_back({j, true, p > 0, y, frac1(t)});
            }
            for (long long k = 0; k < std::abs(q); ++k) {
                Rational t = (rat(q > 0 ? k + 1 : -k) - by) / rat(q);
                Rational x = frac1(bx + t * rat(p));
                if (x == 0 || !seenH.insert(x).second) clash = true;
                perLoop[j].push_back({j, false, q > 0, x, frac1(t)});
            }
        }
        if (clash) continue;

        GeodesicBoundary b;
        // pieces: between consecutive crossings along each loop
        std::vector<std::vector<int>> pieceOf(L);  // per loop, per crossing index
        int pieceCount = 0;
        for (int j = 0; j < L; ++j) {
            auto& cs = perLoop[j];
            std::sort(cs.begin(), cs.end(),
                      [](const Crossing& a, const Crossing& b) { return a.time < b.time; });
            // piece i starts at crossing i (its "in") and ends at crossing i+1
            for (size_t i = 0; i < cs.size(); ++i) {
                pieceOf[j].push_back(pieceCount++);
                b.pieceLoop.push_back(j);
            }
        }
        b.numPieces = pieceCount;
        b.loopClass.assign(L, Disp{0, 0});
        for (int j = 0; j < L; ++j) b.loopClass[j] = {loops[j][0], loops[j][1]};
        b.pieceNext.assign(pieceCount, -1);
        b.pieceStep.assign(pieceCount, Disp{0, 0});
        for (int j = 0; j < L; ++j) {
            size_t m = pieceOf[j].size();
            for (size_t i = 0; i < m; ++i) {
                int cur = pieceOf[j][i];
                b.pieceNext[cur] = pieceOf[j][(i + 1) % m];
                const Crossing& exitC = perLoop[j][(i + 1) % m];
                b.pieceStep[cur] = exitC.vertical ? Disp{exitC.positive ? 1 : -1, 0}
                                                  : Disp{0, exitC.positive ? 1 : -1};
            }
        }

        // endpoints per square side: a crossing of a vertical grid line going
        // +x is an OUT on the right edge and an IN on the left edge; both
        // belong to the same crossing, starting piece pieceOf[loop][i+1]...
        // Actually: the crossing at the end of piece i is the OUT of piece i
        // and the IN of piece i+1.
        // sides: 0 bottom (x asc), 1 right (y asc), 2 top (x desc), 3 left (y desc)
        struct Raw {
            Rational pos;
            int piece;
            bool in;
        };
        std::array<std::vector<Raw>, 4> raw;
        for (int j = 0; j < L; ++j) {
            size_t m = pieceOf[j].size();
            for (size_t i = 0; i < m; ++i) {
                const Crossing& c = perLoop[j][i];  // the IN crossing of piece i
                int pin = pieceOf[j][i];
                int pout = pieceOf[j][(i + m - 1) % m];
                if (c.vertical) {
                    if (c.positive) {  // out right, in left
                        raw[1].push_back({c.pos, pout, false});
                        raw[3].push_back({c.pos, pin, true});
                    } else {
                        raw[3].push_back({c.pos, pout, false});
                        raw[1].push_back({c.pos, pin, true});
                    }
                } else {
                    if (c.positive) {  // out top, in bottom
                        raw[2].push_back({c.pos, pout, false});
                        raw[0].push_back({c.pos, pin, true});
                    } else {
                        raw[0].push_back({c.pos, pout, false});
                        raw[2].push_back({c.pos, pin, true});
                    }
                }
            }
        }
        // order geometrically along the ccw boundary and interleave in/out
        for (int s = 0; s < 4; ++s) {
            auto& v = raw[s];
            bool desc = s >= 2;
            std::sort(v.begin(), v.end(), [&](const Raw& a, const Raw& bb) {
                return desc ? a.pos > bb.pos : a.pos < bb.pos;
            });
            std::vector<Raw> ins, outs;
            for (auto& r : v) (r.in ? ins : outs).push_back(r);
            if (ins.size() != outs.size())
                throw std::logic_error("geodesic boundary: unbalanced side");
            std::vector<GeodesicBoundary::Endpoint> seq;
            for (size_t i = 0; i < ins.size(); ++i) {
                seq.push_back({ins[i].piece, true, ins[i].pos});
                seq.push_back({outs[i].piece, false, outs[i].pos});
            }
            for (auto& e : seq) b.side[s].push_back(e);
        }
        return b;
    }
}

// ===========================================================================
// Disk induction (Thurston) producing the triple point diagram

namespace {

struct DiskEndpoint {
    Rational key;  // circular position
    int piece;
    bool in;
};

} // namespace

TripleDiagram triple_crossing_diagram(const GeodesicBoundary& b) {
    // Assemble the circular boundary: bottom, right, top, left; keys 0..4.
    std::vector<DiskEndpoint> circle;
    for (int s = 0; s < 4; ++s) {
        size_t m = b.side[s].size();
        for (size_t i = 0; i < m; ++i) {
            const auto& e = b.side[s][i];
            Rational key = rat(s) + rat(static_cast<long long>(i) + 1,
                                        static_cast<long long>(m) + 1);
            circle.push_back({key, e.piece, e.in});
        }
    }
    std::sort(circle.begin(), circle.end(),
              [](const DiskEndpoint& a, const DiskEndpoint& b2) { return a.key < b2.key; });
    for (size_t i = 0; i < circle.size(); ++i)
        if (circle[i].in == circle[(i + 1) % circle.size()].in)
            throw std::logic_error("triple diagram: boundary endpoints do not alternate");

    int P = b.numPieces;
    std::vector<Rational> inKey(P), outKey(P);
    std::vector<char> live(P, 1);
    for (const auto& e : circle) (e.in ? inKey : outKey)[e.piece] = e.key;

    struct Triple {
        std::array<int, 3> pieces;  // in ccw cyclic order of their in-endpoints
    };
    std::vector<Triple> triples;
    std::vector<std::vector<int>> frontEv(P), backEv(P);
    std::vector<std::vector<int>> finalEv(P);

    int rounds = P;
    while (rounds-- > 0) {
        size_t n = circle.size();
        if (n == 0) break;
        // choose (piece, side): ccw arc from one of its endpoints to the other
        // containing no full strand, minimizing the endpoint count inside
        int bestPiece = -1;
        bool bestFromIn = true;
        size_t bestCount = circle.size() + 1;
        auto idxOf = [&](const Rational& key) {
            for (size_t i = 0; i < n; ++i)
                if (circle[i].key == key) return i;
            throw std::logic_error("endpoint key not found");
        };
        for (int p = 0; p < P; ++p) {
            if (!live[p]) continue;
            size_t ia = idxOf(inKey[p]), ib = idxOf(outKey[p]);
            for (bool fromIn : {true, false}) {
                size_t from = fromIn ? ia : ib, to = fromIn ? ib : ia;
                // ccw interval (from, to)
                size_t count = (to + n - from - 1) % n;
                std::set<int> seen;
                bool clean = true;
                for (size_t k = 1; k <= count; ++k) {
                    int q = circle[(from + k) % n].piece;
                    if (!seen.insert(q).second) clean = false;
                }
                if (!clean) continue;
                if (count < bestCount ||
                    (count == bestCount &&
                     (bestPiece < 0 ||
                      std::make_tuple(b.loopClass[b.pieceLoop[p]], p, fromIn) <
                          std::make_tuple(b.loopClass[b.pieceLoop[bestPiece]], bestPiece,
                                          bestFromIn)))) {
                    bestCount = count;
                    bestPiece = p;
                    bestFromIn = fromIn;
                }
            }
        }
        if (bestPiece < 0) throw std::logic_error("no drawable strand found");
        int S = bestPiece;
        size_t ia = idxOf(inKey[S]), ib = idxOf(outKey[S]);
        // walk from the IN endpoint a towards b along the chosen clean side.
        // ccwWalk: true when the clean side is the ccw interval (a -> b).
        bool ccwWalk = bestFromIn;
        size_t from = ccwWalk ? ia : ib;
        size_t to = ccwWalk ? ib : ia;
        size_t count = (to + n - from - 1) % n;
        std::vector<DiskEndpoint> xs;  // in walk order from a
        for (size_t k = 1; k <= count; ++k) {
            size_t idx = ccwWalk ? (from + k) % n : (from + count + 1 - k) % n;
            xs.push_back(circle[idx]);
        }
        if (count % 2) throw std::logic_error("odd intermediate endpoint count");
        // alternation: first intermediate is an OUT
        std::vector<int> walkTriples;
        struct Slot {
            int piece;
            bool in;
        };
        std::vector<std::array<Slot, 2>> slotPairs;  // per triple, ccw reading order
        for (size_t k = 0; k + 1 < xs.size(); k += 2) {
            const auto& xo = xs[k];
            const auto& xi = xs[k + 1];
            if (xo.in || !xi.in) throw std::logic_error("intermediate types out of order");
            int t = static_cast<int>(triples.size());
            // cyclic order of the three strands by their in-endpoints
            Rational kS = inKey[S], k1 = inKey[xo.piece], k2 = inKey[xi.piece];
            auto ccwDist = [&](const Rational& a2, const Rational& b2) {
                Rational d = b2 - a2;
                if (d < 0) d += 4;
                return d;
            };
            Triple tr;
            if (ccwDist(kS, k1) < ccwDist(kS, k2))
                tr.pieces = {S, xo.piece, xi.piece};
            else
                tr.pieces = {S, xi.piece, xo.piece};
            triples.push_back(tr);
            walkTriples.push_back(t);
            // event placement on the crossed strands
            backEv[xo.piece].push_back(t);  // near its out endpoint
            frontEv[xi.piece].push_back(t);
            if (ccwWalk)
                slotPairs.push_back({Slot{xi.piece, true}, Slot{xo.piece, false}});
            else
                slotPairs.push_back({Slot{xo.piece, false}, Slot{xi.piece, true}});
        }
        // S is fully drawn
        finalEv[S] = frontEv[S];
        for (int t : walkTriples) finalEv[S].push_back(t);
        for (auto it = backEv[S].rbegin(); it != backEv[S].rend(); ++it) finalEv[S].push_back(*it);
        live[S] = 0;

        // rebuild the circle: remove a, b and the intermediates; insert slots
        Rational lowKey = circle[(from + n - 1) % n].key;
        Rational highKey = circle[(to + 1) % n].key;
        std::set<size_t> removed{ia, ib};
        for (size_t k = 1; k <= count; ++k) removed.insert((from + k) % n);
        std::vector<DiskEndpoint> next;
        for (size_t i = 0; i < n; ++i)
            if (!removed.count(i)) next.push_back(circle[i]);
        // slots in ccw order: ccwWalk -> pairs in walk order; else reversed
        std::vector<Slot> slotSeq;
        if (ccwWalk) {
            for (auto& pr : slotPairs) {
                slotSeq.push_back(pr[0]);
                slotSeq.push_back(pr[1]);
            }
        } else {
            for (auto it = slotPairs.rbegin(); it != slotPairs.rend(); ++it) {
                slotSeq.push_back((*it)[0]);
                slotSeq.push_back((*it)[1]);
            }
        }
        Rational span = highKey - lowKey;
        if (span <= 0) span += 4;
        for (size_t i = 0; i < slotSeq.size(); ++i) {
            Rational key = lowKey + span * rat(static_cast<long long>(i) + 1,
                                               static_cast<long long>(slotSeq.size()) + 1);
            if (key >= 4) key -= 4;
            next.push_back({key, slotSeq[i].piece, slotSeq[i].in});
            (slotSeq[i].in ? inKey : outKey)[slotSeq[i].piece] = key;
        }
        std::sort(next.begin(), next.end(),
                  [](const DiskEndpoint& a, const DiskEndpoint& b2) { return a.key < b2.key; });
        circle = std::move(next);
        for (size_t i = 0; i < circle.size(); ++i)
            if (circle[i].in == circle[(i + 1) % circle.size()].in)
                throw std::logic_error("alternation lost during induction");
    }
    if (!circle.empty()) throw std::logic_error("disk induction left endpoints behind");

    // Glue pieces into strands on the torus, accumulating offsets.
    TripleDiagram d;
    d.numTriples = static_cast<int>(triples.size());
    std::vector<char> seen(P, 0);
    for (int p0 = 0; p0 < P; ++p0) {
        if (seen[p0]) continue;
        std::vector<TripleDiagram::Pass> passes;
        Disp off{0, 0};
        int p = p0;
        do {
            seen[p] = 1;
            for (int t : finalEv[p]) {
                int role = -1;
                for (int r = 0; r < 3; ++r)
                    if (triples[t].pieces[r] == p) role = r;
                if (role < 0) throw std::logic_error("pass role not found");
                passes.push_back({t, role, off});
            }
            off = off + b.pieceStep[p];
            p = b.pieceNext[p];
        } while (p != p0);
        d.strand.push_back(std::move(passes));
        d.strandClass.push_back(off);
    }
    // classes must reproduce the loop classes
    for (size_t s = 0; s < d.strand.size(); ++s) {
        if (d.strandClass[s] == Disp{0, 0})
            throw std::logic_error("glued strand is homologically trivial");
    }
    return d;
}

// ===========================================================================
// Counterclockwise resolution

BipartiteTorusGraph resolve_to_bipartite(const TripleDiagram& d) {
    int T = d.numTriples;
    if (T == 0) throw std::invalid_argument("resolution of an empty diagram");
    // crossing id for the pair (role m, role m+1) of triple t: 3 t + m
    // slots at a crossing, in the rotation convention of faceNext:
    // 0 = in_i, 1 = out_j, 2 = out_i, 3 = in_j
    struct End {
        int cross, slot;
    };
    struct Arc {
        End from, to;  // from an out slot to an in slot, with the flow
        Disp disp;
    };
    std::vector<Arc> arcs;
    std::vector<std::array<int, 4>> arcAt(3 * T, {-1, -1, -1, -1});

    for (size_t s = 0; s < d.strand.size(); ++s) {
        const auto& passes = d.strand[s];
        if (passes.empty()) throw std::logic_error("strand without crossings");
        // crossing-end sequence of this strand
        struct CE {
            int cross;
            int inSlot, outSlot;
            Disp off;
        };
        std::vector<CE> seq;
        for (const auto& p : passes) {
            int rPrev = (p.role + 2) % 3, rCur = p.role;
            // first crossing: with the previous strand in cyclic order: pair
            // (rPrev, rCur): our strand is the 'j' member
            int c1 = 3 * p.triple + rPrev;
            seq.push_back({c1, 3, 1, p.offset});
            // second crossing: pair (rCur, rCur+1): we are the 'i' member
            int c2 = 3 * p.triple + rCur;
            seq.push_back({c2, 0, 2, p.offset});
        }
        size_t m = seq.size();
        for (size_t k = 0; k < m; ++k) {
            const CE& cur = seq[k];
            const CE& nxt = seq[(k + 1) % m];
            Disp delta = nxt.off - cur.off;
            if (k + 1 == m) delta = delta + d.strandClass[s];
            int a = static_cast<int>(arcs.size());
            arcs.push_back({End{cur.cross, cur.outSlot}, End{nxt.cross, nxt.inSlot}, delta});
            arcAt[cur.cross][cur.outSlot] = a;
            arcAt[nxt.cross][nxt.inSlot] = a;
        }
    }
    for (int c = 0; c < 3 * T; ++c)
        for (int s = 0; s < 4; ++s)
            if (arcAt[c][s] < 0) throw std::logic_error("resolution: unattached slot");

    // face tracing on the 4-valent map
    // directed arc: (arc, forward?) ; head slot of forward = to, else from
    auto headEnd = [&](int a, bool fwd) { return fwd ? arcs[a].to : arcs[a].from; };
    auto dartDisp = [&](int a, bool fwd) { return fwd ? arcs[a].disp : -arcs[a].disp; };
    int A = static_cast<int>(arcs.size());
    std::vector<int> faceOf(2 * A, -1);
    struct Corner {
        int cross;
        int slot;  // corner between slot and slot+1
        Disp off;  // offset in the domain walk frame
    };
    std::vector<std::vector<Corner>> domCorners;
    std::vector<int> domType;  // 0 black, 1 white, 2 face
    for (int a0 = 0; a0 < A; ++a0) {
        for (bool f0 : {true, false}) {
            size_t d0 = 2 * a0 + (f0 ? 0 : 1);
            if (faceOf[d0] >= 0) continue;
            int dom = static_cast<int>(domCorners.size());
            domCorners.push_back({});
            int a = a0;
            bool f = f0;
            Disp off{0, 0};
            std::vector<char> flow;
            int steps = 0;
            do {
                faceOf[2 * a + (f ? 0 : 1)] = dom;
                flow.push_back(f ? 1 : 0);
                off = off + dartDisp(a, f);
                End h = headEnd(a, f);
                domCorners[dom].push_back({h.cross, h.slot, off});
                int s2 = (h.slot + 1) % 4;
                int a2 = arcAt[h.cross][s2];
                // leave the crossing via slot s2: forward if s2 is the 'from'
                bool f2 = arcs[a2].from.cross == h.cross && arcs[a2].from.slot == s2;
                a = a2;
                f = f2;
                if (++steps > 2 * A + 1) throw std::logic_error("face tracing runaway");
            } while (!(a == a0 && f == f0));
            if (off != Disp{0, 0})
                throw std::logic_error("resolution: domain with nonzero displacement");
            bool allWith = true, allAgainst = true, alternating = true;
            for (size_t k = 0; k < flow.size(); ++k) {
                allWith &= flow[k] == 1;
                allAgainst &= flow[k] == 0;
                alternating &= flow[k] != flow[(k + 1) % flow.size()];
            }
            int type;
            if (allWith) type = 0;
            else if (allAgainst) type = 1;
            else if (alternating) type = 2;
            else throw std::invalid_argument("resolution: domain fails the 3-coloring");
            domType.push_back(type);
        }
    }

    // black at the corner entered through in_i (slot 0), white at the corner
    // entered through out_i (slot 2)
    int D = static_cast<int>(domCorners.size());
    std::vector<int> vertexId(D, -1);
    std::vector<Color> colors;
    for (int dom = 0; dom < D; ++dom) {
        if (domType[dom] == 2) continue;
        vertexId[dom] = static_cast<int>(colors.size());
        colors.push_back(domType[dom] == 0 ? Color::Black : Color::White);
    }
    struct EdgeSite {
        int blackDom = -1, whiteDom = -1;
        Disp blackOff{0, 0}, whiteOff{0, 0};
    };
    std::vector<EdgeSite> sites(3 * T);
    for (int dom = 0; dom < D; ++dom) {
        for (const auto& c : domCorners[dom]) {
            if (c.slot == 0) {
                if (domType[dom] != 0) throw std::logic_error("black corner in non-black domain");
                sites[c.cross].blackDom = dom;
                sites[c.cross].blackOff = c.off;
            } else if (c.slot == 2) {
                if (domType[dom] != 1) throw std::logic_error("white corner in non-white domain");
                sites[c.cross].whiteDom = dom;
                sites[c.cross].whiteOff = c.off;
            }
        }
    }
    std::vector<BipartiteTorusGraph::Edge> edges(3 * T);
    for (int c = 0; c < 3 * T; ++c) {
        if (sites[c].blackDom < 0 || sites[c].whiteDom < 0)
            throw std::logic_error("crossing without black/white domains");
        edges[c] = {vertexId[sites[c].blackDom], vertexId[sites[c].whiteDom],
                    sites[c].blackOff - sites[c].whiteOff};
    }
    std::vector<std::vector<int>> rot(colors.size());
    for (int dom = 0; dom < D; ++dom) {
        if (domType[dom] == 2) continue;
        int slot = domType[dom] == 0 ? 0 : 2;
        for (const auto& c : domCorners[dom])
            if (c.slot == slot) rot[vertexId[dom]].push_back(c.cross);
    }
    BipartiteTorusGraph g(std::move(colors), std::move(edges), std::move(rot));

    // shrink the 2-valent whites left by the resolution
    for (;;) {
        int target = -1;
        for (int v = 0; v < g.numVertices() && target < 0; ++v)
            if (g.color(v) == Color::White && g.rotation(v).size() == 2) target = v;
        if (target < 0) break;
        g = shrink_white(g, target).graph;
    }
    return g;
}

BipartiteTorusGraph synthesize_minimal_graph(const NewtonPolygon& n) {
    auto bd = geodesic_boundary_data(n);
    auto td = triple_crossing_diagram(bd);
    // crossing count = twice the area
    if (rat(td.numTriples) != 2 * n.area())
        throw std::logic_error("triple crossing count does not equal twice the area");
    auto g = resolve_to_bipartite(td);
    // face count = 2 area; zig-zag classes = boundary edges; minimal
    if (rat(g.numFaces()) != 2 * n.area())
        throw std::logic_error("synthesized graph has wrong face count");
    std::multiset<std::pair<long long, long long>> want, got;
    for (auto e : n.boundaryEdges()) want.insert({e[0], e[1]});
    for (const auto& z : g.zigzags()) got.insert({z.cls[0], z.cls[1]});
    if (want != got) throw std::logic_error("synthesized zig-zag classes mismatch the polygon");
    return g;
}

// ===========================================================================
// Spider move

namespace {

int thirdEdge(const BipartiteTorusGraph& g, int v, int e1, int e2) {
    for (int e : g.rotation(v))
        if (e != e1 && e != e2) return e;
    throw std::logic_error("no third edge");
}

} // namespace

Cycle SpiderMove::pullbackCycleToPrepared(const Cycle& onNew) const {
    auto coefOf = [&](int e) {
        auto it = onNew.coef.find(e);
        return it == onNew.coef.end() ? 0LL : it->second;
    };
    long long zB = coefOf(eB), zE = coefOf(eE), zC = coefOf(eC);
    long long zA = coefOf(eA), zD = coefOf(eD), zF = coefOf(eF);
    if (zE != -zB - zC || zD != -zA - zF)
        throw std::invalid_argument("pullbackCycle: chain not closed at the spider blacks");
    Cycle out;
    std::set<int> inside{eB, eE, eC, eA, eD, eF};
    for (const auto& [e, c] : onNew.coef)
        if (!inside.count(e)) out.add(e, c);
    out += pullP12.scaled(-zB);
    out += pullP23.scaled(zC);
    out += pullP13.scaled(-zA);
    out += pullP34.scaled(zF);
    return out;
}

Cycle SpiderMove::pullbackCycle(const Cycle& onNew) const {
    Cycle c = pullbackCycleToPrepared(onNew);
    // collapse the preparation insertions: drop the connector edges
    for (auto [eKeep, eMove] : prepEdges) {
        auto k = c.coef.find(eKeep), m = c.coef.find(eMove);
        long long ck = k == c.coef.end() ? 0 : k->second;
        long long cm = m == c.coef.end() ? 0 : m->second;
        if (ck + cm != 0) throw std::logic_error("pullbackCycle: open at a prepared white");
        c.coef.erase(eKeep);
        c.coef.erase(eMove);
    }
    return c;
}

namespace {

// Core move; requires 3-valent black corners.
SpiderMove spiderCore(const BipartiteTorusGraph& g, int face);

} // namespace

SpiderMove spider_move(const BipartiteTorusGraph& g, int face) {
    if (face < 0 || face >= g.numFaces()) throw std::invalid_argument("spider_move: bad face");
    if (g.faces()[face].darts.size() != 4)
        throw std::invalid_argument("spider_move: face is not a quadrilateral");
    // preparation: split off oversized black corners through 2-valent whites
    BipartiteTorusGraph cur = g;
    std::vector<int> prepFaceMap(g.numFaces());
    std::iota(prepFaceMap.begin(), prepFaceMap.end(), 0);
    std::vector<std::pair<int, int>> prepEdges;
    int curFace = face;
    for (int round = 0; round < 2; ++round) {
        const auto& fd = cur.faces()[curFace].darts;
        int bigBlack = -1;
        Dart arrival{};
        for (size_t i = 0; i < fd.size(); ++i) {
            int head = cur.head(fd[i]);
            if (cur.color(head) == Color::Black && cur.rotation(head).size() > 3) {
                bigBlack = head;
                arrival = fd[i];
                break;
            }
        }
        if (bigBlack < 0) break;
        // the two face edges at this corner are the arrival edge and its
        // rotation successor
        const auto& rot = cur.rotation(bigBlack);
        size_t pos = 0;
        while (rot[pos] != arrival.edge) ++pos;
        auto ex = expand_black(cur, bigBlack, static_cast<int>(pos), 2);
        prepEdges.push_back({ex.eKeep, ex.eMove});
        for (auto& f : prepFaceMap) f = ex.faceMap[f];
        curFace = ex.faceMap[curFace];
        cur = std::move(ex.graph);
    }
    SpiderMove mv = spiderCore(cur, curFace);
    mv.prepared = cur;
    mv.prepEdges = prepEdges;
    mv.centerOld = face;
    // compose face maps: original -> prepared -> new
    std::vector<int> composed(g.numFaces());
    for (int f = 0; f < g.numFaces(); ++f) composed[f] = mv.faceMap[prepFaceMap[f]];
    // side labels back in original face ids
    std::array<int, 4> sidesOrig;
    for (int i = 0; i < 4; ++i) {
        int prepSide = mv.sidesOld[i];
        int orig = -1;
        for (int f = 0; f < g.numFaces(); ++f)
            if (prepFaceMap[f] == prepSide) orig = f;
        sidesOrig[i] = orig;  // -1 only if a side face was created by prep (impossible)
    }
    mv.sidesOld = sidesOrig;
    mv.faceMap = std::move(composed);
    return mv;
}

namespace {

SpiderMove spiderCore(const BipartiteTorusGraph& g, int face) {
    const auto& fd = g.faces()[face].darts;
    if (fd.size() != 4) throw std::invalid_argument("spider_move: face is not a quadrilateral");
    // orient so darts are (c,BW),(e,WB),(d,BW),(b,WB)
    int start = fd[0].bw ? 0 : 1;
    Dart d1 = fd[start], d2 = fd[(start + 1) % 4], d3 = fd[(start + 2) % 4],
         d4 = fd[(start + 3) % 4];
    int ec = d1.edge, ee = d2.edge, ed = d3.edge, eb = d4.edge;
    int b1 = g.edge(ec).black, b2 = g.edge(ed).black;
    int w2 = g.edge(ec).white, w4 = g.edge(ed).white;
    if (b1 == b2 || w2 == w4)
        throw std::invalid_argument("spider_move: quad corners must be distinct vertices");
    if (g.rotation(b1).size() != 3 || g.rotation(b2).size() != 3)
        throw std::invalid_argument("spider_move: black corners must be 3-valent");
    int ea = thirdEdge(g, b1, ec, eb);
    int ef = thirdEdge(g, b2, ee, ed);
    int w1 = g.edge(ea).white, w3 = g.edge(ef).white;

    // side faces by their corners
    int Fab = g.faceOf(Dart{eb, true});
    int Fca = g.faceOf(Dart{ea, true});
    int Ffe = g.faceOf(Dart{ee, true});
    int Fdf = g.faceOf(Dart{ef, true});

    Cycle gammaF = g.faceCycle(face);
    // gamma_F corrections of the through-path images: local constants of the
    // corner structure (the corner sharing edge e or b with the quad pairs
    // +1 against gamma_F, the ones sharing c or d pair -1)
    const long long nCA = 0, nFE = -1, nDF = 0;
    const long long n13 = 1 + nCA + nFE;

    // the transformed graph: reuse ids; roles B<-a, E<-c, C<-b, A<-e, D<-f, F<-d
    std::vector<Color> colors;
    for (int v = 0; v < g.numVertices(); ++v) colors.push_back(g.color(v));
    auto edges = g.edges();
    Disp da = g.edge(ea).disp, db = g.edge(eb).disp, dc = g.edge(ec).disp, dd = g.edge(ed).disp,
         de = g.edge(ee).disp, df = g.edge(ef).disp;
    edges[ea] = {b1, w1, da};                     // B
    edges[ec] = {b1, w2, dc};                     // E
    edges[eb] = {b1, w3, dc - de + df};           // C
    edges[ee] = {b2, w1, da - dc + de};           // A
    edges[ef] = {b2, w3, df};                     // D
    edges[ed] = {b2, w4, dd};                     // F
    int eB = ea, eE = ec, eC = eb, eA = ee, eD = ef, eF = ed;

    std::vector<std::vector<int>> rot;
    for (int v = 0; v < g.numVertices(); ++v) rot.push_back(g.rotation(v));
    rot[b1] = {eE, eB, eC};
    rot[b2] = {eA, eF, eD};
    auto replaceOne = [&](int v, int eOld, std::vector<int> with) {
        auto& r = rot[v];
        auto it = std::find(r.begin(), r.end(), eOld);
        if (it == r.end()) throw std::logic_error("rotation splice: edge missing");
        size_t pos = static_cast<size_t>(it - r.begin());
        r.erase(it);
        r.insert(r.begin() + pos, with.begin(), with.end());
    };
    auto replacePair = [&](int v, int eFirst, int eSecond, int with) {
        auto& r = rot[v];
        auto it = std::find(r.begin(), r.end(), eFirst);
        if (it == r.end()) throw std::logic_error("rotation splice: pair missing");
        size_t pos = static_cast<size_t>(it - r.begin());
        size_t posNext = (pos + 1) % r.size();
        if (r[posNext] != eSecond) throw std::logic_error("rotation splice: pair not adjacent");
        if (posNext > pos) {
            r.erase(r.begin() + posNext);
            r.erase(r.begin() + pos);
            r.insert(r.begin() + pos, with);
        } else {  // wrapped
            r.erase(r.begin() + pos);
            r.erase(r.begin());
            r.push_back(with);
        }
    };
    replaceOne(w1, ea, {eA, eB});
    replaceOne(w3, ef, {eC, eD});
    replacePair(w2, ec, ee, eE);
    replacePair(w4, ed, eb, eF);

    SpiderMove out;
    out.graph = BipartiteTorusGraph(std::move(colors), std::move(edges), std::move(rot));
    out.centerOld = face;
    out.oldEdges = {ea, eb, ec, ed, ee, ef};
    out.newEdges = {eB, eE, eC, eA, eD, eF};
    out.eB = eB;
    out.eE = eE;
    out.eC = eC;
    out.eA = eA;
    out.eD = eD;
    out.eF = eF;

    // pullback chains on the old graph
    auto chain = [&](std::initializer_list<std::pair<int, long long>> items, long long nGamma) {
        Cycle c;
        for (auto [e, k] : items) c.add(e, k);
        c += gammaF.scaled(nGamma);
        return c;
    };
    out.pullP12 = chain({{ec, 1}, {ea, -1}}, nCA);
    out.pullP23 = chain({{ef, 1}, {ee, -1}}, nFE);
    out.pullP13 = chain({{ec, 1}, {ea, -1}, {ef, 1}, {ee, -1}}, n13);
    out.pullP34 = chain({{ed, 1}, {ef, -1}}, nDF);

    // face correspondence
    out.centerNew = out.graph.faceOf(Dart{eC, true});
    std::array<int, 4> sidesOldGeom{Fab, Fca, Ffe, Fdf};
    std::array<int, 4> sidesNewGeom{
        out.graph.faceOf(Dart{eF, true}),   // between w4 and w1
        out.graph.faceOf(Dart{eB, true}),   // w1, w2
        out.graph.faceOf(Dart{eE, true}),   // w2, w3
        out.graph.faceOf(Dart{eD, true})};  // w3, w4
    // label so that sides 0 and 2 pair to -1 against the center (they gain
    // the (1+W) factor): these are the corners through edges c and d
    const int shift = 1;
    for (int i = 0; i < 4; ++i) {
        out.sidesOld[i] = sidesOldGeom[(i + shift) % 4];
        out.sidesNew[i] = sidesNewGeom[(i + shift) % 4];
    }

    out.faceMap.assign(g.numFaces(), -1);
    out.faceMap[face] = out.centerNew;
    for (int i = 0; i < 4; ++i) out.faceMap[out.sidesOld[i]] = out.sidesNew[i];
    std::set<int> inside{ea, eb, ec, ed, ee, ef};
    for (int f = 0; f < g.numFaces(); ++f) {
        if (out.faceMap[f] >= 0) continue;
        for (const Dart& d : g.faces()[f].darts) {
            if (inside.count(d.edge)) continue;
            out.faceMap[f] = out.graph.faceOf(d);
            break;
        }
        if (out.faceMap[f] < 0) throw std::logic_error("spider_move: unmatched face");
    }
    return out;
}

} // namespace

// ===========================================================================
// Shrink / expand

ShrinkResult shrink_white(const BipartiteTorusGraph& g, int w) {
    if (w < 0 || w >= g.numVertices() || g.color(w) != Color::White)
        throw std::invalid_argument("shrink_white: not a white vertex");
    if (g.rotation(w).size() != 2) throw std::invalid_argument("shrink_white: vertex not 2-valent");
    int e1 = g.rotation(w)[0], e2 = g.rotation(w)[1];
    int b1 = g.edge(e1).black, b2 = g.edge(e2).black;
    if (b1 == b2) throw std::invalid_argument("shrink_white: both edges at the same black vertex");
    Disp shift = g.edge(e1).disp - g.edge(e2).disp;  // lift of b2 relative to b1

    ShrinkResult out;
    out.removedE1 = e1;
    out.removedE2 = e2;
    out.vertexMap.assign(g.numVertices(), -1);
    out.edgeMap.assign(g.numEdges(), -1);
    std::vector<Color> colors;
    for (int v = 0; v < g.numVertices(); ++v) {
        if (v == w || v == b2) continue;
        out.vertexMap[v] = static_cast<int>(colors.size());
        colors.push_back(g.color(v));
    }
    out.vertexMap[b2] = out.vertexMap[b1];
    out.mergedBlack = out.vertexMap[b1];

    std::vector<BipartiteTorusGraph::Edge> edges;
    for (int e = 0; e < g.numEdges(); ++e) {
        if (e == e1 || e == e2) continue;
        out.edgeMap[e] = static_cast<int>(edges.size());
        auto E = g.edge(e);
        if (E.black == b2) {
            E.disp = E.disp + shift;
            out.sideB2Old.push_back(e);
        }
        E.black = out.vertexMap[E.black];
        E.white = out.vertexMap[E.white];
        edges.push_back(E);
    }

    std::vector<std::vector<int>> rot(colors.size());
    for (int v = 0; v < g.numVertices(); ++v) {
        if (v == w || v == b2) continue;
        if (v == b1) {
            // splice rot(b2) into rot(b1) at e1's slot, starting after e2
            std::vector<int> merged;
            for (int e : g.rotation(b1)) {
                if (e != e1) {
                    merged.push_back(out.edgeMap[e]);
                    continue;
                }
                const auto& r2 = g.rotation(b2);
                size_t pos2 = 0;
                while (r2[pos2] != e2) ++pos2;
                for (size_t k = 1; k < r2.size(); ++k)
                    merged.push_back(out.edgeMap[r2[(pos2 + k) % r2.size()]]);
            }
            rot[out.vertexMap[v]] = std::move(merged);
        } else {
            for (int e : g.rotation(v)) rot[out.vertexMap[v]].push_back(out.edgeMap[e]);
        }
    }
    out.graph = BipartiteTorusGraph(std::move(colors), std::move(edges), std::move(rot));

    out.faceMap.assign(g.numFaces(), -1);
    for (int f = 0; f < g.numFaces(); ++f) {
        for (const Dart& d : g.faces()[f].darts) {
            if (out.edgeMap[d.edge] < 0) continue;
            out.faceMap[f] = out.graph.faceOf(Dart{out.edgeMap[d.edge], d.bw});
            break;
        }
        if (out.faceMap[f] < 0) throw std::logic_error("shrink_white: face vanished");
    }
    return out;
}

ExpandResult expand_black(const BipartiteTorusGraph& g, int b, int splitStart, int splitLen) {
    if (b < 0 || b >= g.numVertices() || g.color(b) != Color::Black)
        throw std::invalid_argument("expand_black: not a black vertex");
    int deg = static_cast<int>(g.rotation(b).size());
    if (splitLen < 1 || splitLen >= deg)
        throw std::invalid_argument("expand_black: split must keep both sides nonempty");

    std::vector<Color> colors;
    for (int v = 0; v < g.numVertices(); ++v) colors.push_back(g.color(v));
    int newWhite = static_cast<int>(colors.size());
    colors.push_back(Color::White);
    int newBlack = static_cast<int>(colors.size());
    colors.push_back(Color::Black);

    auto edges = g.edges();
    std::vector<int> moved;
    for (int k = 0; k < splitLen; ++k) {
        int e = g.rotation(b)[(splitStart + k) % deg];
        moved.push_back(e);
        edges[e].black = newBlack;
    }
    int eKeep = static_cast<int>(edges.size());
    edges.push_back({b, newWhite, {0, 0}});
    int eMove = static_cast<int>(edges.size());
    edges.push_back({newBlack, newWhite, {0, 0}});

    std::vector<std::vector<int>> rot;
    for (int v = 0; v < g.numVertices(); ++v) rot.push_back(g.rotation(v));
    std::vector<int> rb;
    for (int k = 0; k < deg; ++k) {
        int idx = (splitStart + k) % deg;
        if (k == 0) rb.push_back(eKeep);  // new edge where the split run was
        if (k < splitLen) continue;
        rb.push_back(g.rotation(b)[idx]);
    }
    rot[b] = std::move(rb);
    rot.push_back({eKeep, eMove});            // the 2-valent white
    std::vector<int> rn{eMove};               // new black: eMove then the moved run
    for (int e : moved) rn.push_back(e);
    rot.push_back(std::move(rn));

    ExpandResult out;
    out.newWhite = newWhite;
    out.newBlack = newBlack;
    out.eKeep = eKeep;
    out.eMove = eMove;
    out.graph = BipartiteTorusGraph(std::move(colors), std::move(edges), std::move(rot));
    out.faceMap.assign(g.numFaces(), -1);
    for (int f = 0; f < g.numFaces(); ++f) {
        for (const Dart& d : g.faces()[f].darts) {
            out.faceMap[f] = out.graph.faceOf(d);
            break;
        }
    }
    return out;
}

// ===========================================================================
// Graph isomorphism

std::optional<GraphIso> find_isomorphism(const BipartiteTorusGraph& a,
                                         const BipartiteTorusGraph& b) {
    if (a.numVertices() != b.numVertices() || a.numEdges() != b.numEdges() ||
        a.numFaces() != b.numFaces())
        return std::nullopt;
    int V = a.numVertices();
    if (V == 0) return GraphIso{};

    for (int seed = 0; seed < V; ++seed) {
        if (b.color(seed) != a.color(0)) continue;
        if (b.rotation(seed).size() != a.rotation(0).size()) continue;
        size_t degz = a.rotation(0).size();
        for (size_t offset = 0; offset < degz; ++offset) {
            std::vector<int> vmap(V, -1), emap(a.numEdges(), -1);
            std::vector<Disp> shift(V, Disp{0, 0});
            std::vector<size_t> align(V, 0);  // rotation offset per matched vertex
            vmap[0] = seed;
            shift[0] = {0, 0};
            align[0] = offset;
            std::queue<int> q;
            q.push(0);
            bool ok = true;
            std::vector<char> usedB(V, 0);
            usedB[seed] = 1;
            while (!q.empty() && ok) {
                int v = q.front();
                q.pop();
                const auto& ra = a.rotation(v);
                const auto& rb = b.rotation(vmap[v]);
                for (size_t i = 0; i < ra.size() && ok; ++i) {
                    int ea = ra[i];
                    int eb = rb[(i + align[v]) % rb.size()];
                    if (emap[ea] >= 0 && emap[ea] != eb) {
                        ok = false;
                        break;
                    }
                    emap[ea] = eb;
                    const auto& EA = a.edge(ea);
                    const auto& EB = b.edge(eb);
                    int wa = EA.black == v ? EA.white : EA.black;
                    int wb2 = EB.black == vmap[v] ? EB.white : EB.black;
                    if (a.color(wa) != b.color(wb2)) {
                        ok = false;
                        break;
                    }
                    // lift shift from the displacement relation
                    Disp s;
                    if (EA.black == v)
                        s = EB.disp - EA.disp + shift[v];  // shift of the white end
                    else
                        s = EA.disp - EB.disp + shift[v];  // shift of the black end
                    if (vmap[wa] < 0) {
                        if (usedB[wb2]) {
                            ok = false;
                            break;
                        }
                        if (a.rotation(wa).size() != b.rotation(wb2).size()) {
                            ok = false;
                            break;
                        }
                        vmap[wa] = wb2;
                        usedB[wb2] = 1;
                        shift[wa] = s;
                        // align rotations through this edge
                        const auto& rwa = a.rotation(wa);
                        const auto& rwb = b.rotation(wb2);
                        size_t pa = 0, pb = 0;
                        while (rwa[pa] != ea) ++pa;
                        while (rwb[pb] != eb) ++pb;
                        align[wa] = (pb + rwb.size() - pa) % rwb.size();
                        q.push(wa);
                    } else {
                        if (vmap[wa] != wb2 || !(shift[wa] == s)) {
                            ok = false;
                            break;
                        }
                    }
                }
            }
            if (!ok) continue;
            for (int v = 0; v < V; ++v)
                if (vmap[v] < 0) ok = false;  // disconnected inputs not supported
            if (!ok) continue;
            GraphIso iso;
            iso.vertexMap = vmap;
            iso.edgeMap = emap;
            return iso;
        }
    }
    return std::nullopt;
}

} // namespace dimer
