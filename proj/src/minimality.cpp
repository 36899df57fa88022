#include "dimer/minimality.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace dimer {

std::string MinimalityWitness::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::SelfCrossing:
            os << "strand " << strandA << " self-crosses at edge " << edgeA;
            break;
        case Kind::ParallelBigon:
            os << "strands " << strandA << "," << strandB << " bound a parallel bigon at edges "
               << edgeA << "," << edgeB;
            break;
        case Kind::ContractibleStrand:
            os << "strand " << strandA << " is homologically trivial";
            break;
    }
    return os.str();
}

namespace {

struct Pass {
    int strand;
    int pos;      // index along the strand traversal
    Disp anchor;  // cover offset of the black end of the edge copy
};

// One torus crossing between the two strands through an edge.
struct Instance {
    int edge;
    int posA, posB;  // positions along strand A (b->w pass) and B (w->b pass)
    Disp u;          // anchorA - anchorB
};

bool multipleOf(Disp u, Disp p, long long* t = nullptr) {
    if (p[0] == 0 && p[1] == 0) return u[0] == 0 && u[1] == 0;
    long long k;
    if (p[0] != 0) {
        if (u[0] % p[0]) return false;
        k = u[0] / p[0];
    } else {
        if (u[1] % p[1]) return false;
        k = u[1] / p[1];
    }
    if (u[0] != k * p[0] || u[1] != k * p[1]) return false;
    if (t) *t = k;
    return true;
}

} // namespace

MinimalityReport minimality_check(const BipartiteTorusGraph& g) {
    MinimalityReport rep;
    const auto& zz = g.zigzags();
    int S = static_cast<int>(zz.size());

    for (int s = 0; s < S; ++s) {
        if (zz[s].cls[0] == 0 && zz[s].cls[1] == 0) {
            rep.minimal = false;
            rep.witness = MinimalityWitness{MinimalityWitness::Kind::ContractibleStrand, s, s};
            return rep;
        }
    }

    // Record every pass of every strand with its cover anchor.
    std::vector<Pass> bwPass(g.numEdges()), wbPass(g.numEdges());
    std::vector<long long> length(S, 0);
    for (int s = 0; s < S; ++s) {
        Disp off{0, 0};
        int pos = 0;
        for (const Dart& d : zz[s].darts) {
            Disp anchor = d.bw ? off : off + g.dartDisp(d);
            (d.bw ? bwPass : wbPass)[d.edge] = Pass{s, pos, anchor};
            off = off + g.dartDisp(d);
            ++pos;
        }
        length[s] = pos;
    }

    // Group torus crossings by unordered strand pair.
    std::map<std::pair<int, int>, std::vector<Instance>> byPair;
    for (int e = 0; e < g.numEdges(); ++e) {
        const Pass& pa = bwPass[e];
        const Pass& pb = wbPass[e];
        int A = pa.strand, B = pb.strand;
        Instance inst{e, pa.pos, pb.pos, pa.anchor - pb.anchor};
        if (A <= B) {
            byPair[{A, B}].push_back(inst);
        } else {
            // keep the smaller index in the A role: swap roles
            byPair[{B, A}].push_back(Instance{e, pb.pos, pa.pos, pb.anchor - pa.anchor});
        }
        rep.crossingCounts[{std::min(A, B), std::max(A, B)}]++;
    }
    // The role swap above flips which strand runs b->w, but an instance is
    // just "these two passes meet at this edge copy"; positions and the
    // anchor difference are all the later analysis needs.

    for (auto& [pair, insts] : byPair) {
        auto [A, B] = pair;
        Disp pA = zz[A].cls, pB = zz[B].cls;
        long long LA = length[A], LB = length[B];

        if (A == B) {
            for (const Instance& i : insts) {
                if (multipleOf(i.u, pA)) {
                    rep.minimal = false;
                    rep.witness =
                        MinimalityWitness{MinimalityWitness::Kind::SelfCrossing, A, A, i.edge};
                    return rep;
                }
            }
        }

        long long det = pA[0] * pB[1] - pA[1] * pB[0];
        for (size_t i1 = 0; i1 < insts.size(); ++i1) {
            for (size_t i2 = i1; i2 < insts.size(); ++i2) {
                const Instance& x = insts[i1];
                const Instance& y = insts[i2];
                Disp diff = x.u - y.u;  // solve diff = dt*pA - ds*pB
                auto check = [&](long long dt, long long ds) {
                    if (i1 == i2 && dt == 0 && ds == 0) return;
                    long long dpos_a = y.posA + dt * LA - x.posA;
                    long long dpos_b = y.posB + ds * LB - x.posB;
                    if (dpos_a == 0 || dpos_b == 0) return;  // same crossing point
                    if ((dpos_a > 0) == (dpos_b > 0)) {
                        rep.minimal = false;
                        rep.witness = MinimalityWitness{MinimalityWitness::Kind::ParallelBigon, A,
                                                        B, x.edge, y.edge};
                    }
                };
                if (det != 0) {
                    long long tn = diff[0] * pB[1] - diff[1] * pB[0];
                    long long sn = pA[0] * diff[1] - pA[1] * diff[0];
                    // dt = tn/det, ds = -sn/det... derive: diff = dt pA - ds pB
                    // cross with pB: diff x pB = dt (pA x pB) -> dt = (diff x pB)/det
                    // cross pA with diff: pA x diff = -ds (pA x pB) -> ds = -(pA x diff)/det
                    if (tn % det == 0 && sn % det == 0) check(tn / det, -(sn / det));
                } else {
                    // dependent classes: pA = alpha*v, pB = beta*v, v primitive
                    long long gx = std::gcd(std::abs(pA[0]), std::abs(pA[1]));
                    Disp v{pA[0] / gx, pA[1] / gx};
                    long long alpha = gx;
                    long long beta;
                    if (!multipleOf(pB, v, &beta)) continue;  // cannot happen for det=0, primitive v
                    long long mu;
                    if (!multipleOf(diff, v, &mu)) continue;  // no solutions
                    long long gg = std::gcd(std::abs(alpha), std::abs(beta));
                    if (mu % gg) continue;
                    // particular solution of dt*alpha - ds*beta = mu
                    long long a0 = alpha / gg, b0 = beta / gg, m0 = mu / gg;
                    // extended gcd for a0*x + (-b0)*y = 1
                    long long x0, y0;
                    {
                        long long a = a0, b = -b0, px = 1, qx = 0, py = 0, qy = 1;
                        while (b != 0) {
                            long long q = a / b;
                            a -= q * b;
                            std::swap(a, b);
                            px -= q * py;
                            std::swap(px, py);
                            qx -= q * qy;
                            std::swap(qx, qy);
                        }
                        // a = +-1 since gcd(a0,b0) = 1
                        x0 = px * a * m0;
                        y0 = qx * a * m0;
                    }
                    // family: dt = x0 + r*b0, ds = y0 + r*a0
                    auto bound = [&](long long base, long long step, long long offset) {
                        if (step == 0) return 1LL;
                        return std::abs(base + offset) / std::abs(step) + 2;
                    };
                    long long R = std::max(bound(y.posA - x.posA, b0 * LA, x0 * LA),
                                           bound(y.posB - x.posB, a0 * LB, y0 * LB));
                    for (long long r = -R; r <= R; ++r) check(x0 + r * b0, y0 + r * a0);
                }
                if (!rep.minimal) return rep;
            }
        }
    }
    return rep;
}

} // namespace dimer
