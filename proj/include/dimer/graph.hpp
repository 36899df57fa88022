#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dimer/rational.hpp"
#include "dimer/skew_form.hpp"

namespace dimer {

using Disp = std::array<long long, 2>;

inline Disp operator+(Disp a, Disp b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Disp operator-(Disp a, Disp b) { return {a[0] - b[0], a[1] - b[1]}; }
inline Disp operator-(Disp a) { return {-a[0], -a[1]}; }
inline Disp operator*(long long k, Disp a) { return {k * a[0], k * a[1]}; }

enum class Color { Black, White };

// Directed dart: an edge traversed black->white (BW) or white->black (WB).
struct Dart {
    int edge = -1;
    bool bw = true;
    bool operator==(const Dart& o) const { return edge == o.edge && bw == o.bw; }
    bool operator<(const Dart& o) const { return edge != o.edge ? edge < o.edge : bw < o.bw; }
};

// Integer 1-chain on a graph, coefficients in the black->white orientation.
struct Cycle {
    std::map<int, long long> coef;  // edge -> coefficient
    void add(int edge, long long c) {
        auto it = coef.find(edge);
        if (it == coef.end()) {
            if (c != 0) coef.emplace(edge, c);
        } else {
            it->second += c;
            if (it->second == 0) coef.erase(it);
        }
    }
    Cycle& operator+=(const Cycle& o) {
        for (auto& [e, c] : o.coef) add(e, c);
        return *this;
    }
    Cycle scaled(long long k) const {
        Cycle r;
        if (k != 0)
            for (auto& [e, c] : coef) r.coef[e] = k * c;
        return r;
    }
    bool operator==(const Cycle& o) const { return coef == o.coef; }
};

struct ZigZag {
    std::vector<Dart> darts;  // closed, oriented
    Disp cls{0, 0};           // homology class
    Cycle chain() const;
};

struct Face {
    std::vector<Dart> darts;  // ccw boundary
};

// Bipartite graph embedded on the torus, given as a ribbon graph: per-vertex
// counterclockwise cyclic order of incident edges, plus a homology
// displacement per edge measured against a fundamental-domain lift.
//
// Faces and zig-zags are derived on construction; a face with nonzero total
// displacement means the embedding is invalid (faces must be disks) and
// construction throws.
class BipartiteTorusGraph {
public:
    struct Edge {
        int black, white;
        Disp disp;  // from black's lift, the edge reaches white's lift + disp
    };

    BipartiteTorusGraph() = default;
    BipartiteTorusGraph(std::vector<Color> colors, std::vector<Edge> edges,
                        std::vector<std::vector<int>> rot);

    int numVertices() const { return static_cast<int>(colors_.size()); }
    int numEdges() const { return static_cast<int>(edges_.size()); }
    int numFaces() const { return static_cast<int>(faces_.size()); }
    Color color(int v) const { return colors_[v]; }
    const Edge& edge(int e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& rotation(int v) const { return rot_[v]; }
    const std::vector<Face>& faces() const { return faces_; }

    int tail(Dart d) const { return d.bw ? edges_[d.edge].black : edges_[d.edge].white; }
    int head(Dart d) const { return d.bw ? edges_[d.edge].white : edges_[d.edge].black; }
    Disp dartDisp(Dart d) const { return d.bw ? edges_[d.edge].disp : -edges_[d.edge].disp; }

    // Next dart of the face containing d (faces keep their interior on the left).
    Dart faceNext(Dart d) const;
    // Next dart of the oriented zig-zag path through d (counterclockwise
    // around black vertices, clockwise around white ones).
    Dart zigzagNext(Dart d) const;

    int faceOf(Dart d) const { return faceOf_.at(dartIndex(d)); }

    const std::vector<ZigZag>& zigzags() const { return zigzags_; }
    // Index of the zig-zag traversing edge e white->black (the "left" one,
    // with the black vertex following the white) and black->white.
    int zigzagThrough(Dart d) const { return zzOf_.at(dartIndex(d)); }

    Cycle faceCycle(int f) const;

    bool isConnected() const;

    // Sanity bundle: bipartite endpoints, rotations are permutations,
    // V - E + F = 0, faces have zero displacement. Called by the constructor.
    void validate() const;

    std::string describe() const;

private:
    std::vector<Color> colors_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> rot_;
    std::vector<Face> faces_;
    std::vector<ZigZag> zigzags_;
    std::vector<int> faceOf_, zzOf_;
    std::vector<std::map<int, int>> rotPos_;  // vertex -> edge -> position in rot

    size_t dartIndex(Dart d) const { return 2 * static_cast<size_t>(d.edge) + (d.bw ? 0 : 1); }
    void traceFaces();
    void traceZigzags();
};

// Homology bookkeeping of H1(Gamma, Z) = Z^{F+1}: basis given by the face
// boundary cycles of all faces except the last one, followed by two generator
// chains with torus classes (1,0) and (0,1) built from a BFS spanning tree.
class HomologyBasis {
public:
    explicit HomologyBasis(const BipartiteTorusGraph& g);

    int dim() const { return static_cast<int>(basis_.size()); }
    const Cycle& basisCycle(int i) const { return basis_[i]; }
    int omittedFace() const { return omitted_; }

    // Coordinates of a closed 1-chain in the basis; throws if not closed.
    std::vector<long long> decompose(const Cycle& z) const;

    Disp torusClass(const Cycle& z) const;
    bool isClosed(const Cycle& z) const;

    // epsilon matrix of the basis; entries integer on closed cycles.
    SkewForm epsilonForm() const;

private:
    const BipartiteTorusGraph& g_;
    std::vector<Cycle> basis_;  // F-1 face cycles, then g1, g2
    int omitted_;
    Cycle g1_, g2_;
    std::vector<int> facePlus_;  // edge -> face whose ccw boundary runs b->w through it
    std::vector<int> faceMinus_;
};

// Local pairing at a vertex star: arguments are degree-zero integer vectors
// over the cyclically ordered darts at v (coefficients of outward-oriented
// edges). Returns twice the pairing, which is always an integer.
long long localPairingTwice(const std::vector<long long>& a, const std::vector<long long>& b);

Rational local_pairing(const std::vector<long long>& a, const std::vector<long long>& b);

// Intersection form on the conjugate surface: sum over shared vertices of
// sgn(v) * delta_v, with sgn = +1 at white and -1 at black vertices.
// Integer-valued on closed chains.
long long intersection_form_twice(const BipartiteTorusGraph& g, const Cycle& a, const Cycle& b);
Rational intersection_form(const BipartiteTorusGraph& g, const Cycle& a, const Cycle& b);

// epsilon on the homology basis (faces minus one plus two generators).
SkewForm face_epsilon_matrix(const BipartiteTorusGraph& g);

} // namespace dimer
