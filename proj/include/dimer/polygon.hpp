#pragma once

#include <array>
#include <optional>
#include <vector>

#include "dimer/laurent.hpp"

namespace dimer {

using LatticePoint = std::array<long long, 2>;

// Convex lattice polygon up to translation. Stored as the counterclockwise
// vertex list of the convex hull, translated so the lexicographically
// smallest vertex sits at the origin and comes first. Degenerate inputs
// (points, segments) are allowed; most operations reject them explicitly.
class NewtonPolygon {
public:
    NewtonPolygon() = default;
    static NewtonPolygon fromPoints(const std::vector<LatticePoint>& pts);

    const std::vector<LatticePoint>& vertices() const { return verts_; }
    bool empty() const { return verts_.empty(); }
    bool isDegenerate() const { return verts_.size() < 3; }

    Rational area() const;  // exact, shoelace

    // Each side of lattice length k contributes k copies of its primitive
    // vector, in counterclockwise order. Requires positive area.
    std::vector<LatticePoint> boundaryEdges() const;

    struct Counts {
        long long interior;
        long long boundary;
        Rational area;
    };
    // Interior count by direct lattice enumeration (the Pick identity is a
    // test-level consequence, not an implementation shortcut).
    Counts latticeCounts() const;

    // True iff N = -N up to translation; center returned in halves (hx/2, hy/2).
    std::optional<std::array<Rational, 2>> symmetryCenter() const;

    bool operator==(const NewtonPolygon& o) const { return verts_ == o.verts_; }
    bool operator!=(const NewtonPolygon& o) const { return !(*this == o); }

    NewtonPolygon negated() const;
    NewtonPolygon scaled(long long k) const;

    std::string str() const;

private:
    std::vector<LatticePoint> verts_;
};

// Newton polygon of a Laurent polynomial in exactly two variables.
// Throws on the zero polynomial.
NewtonPolygon lp_newton_polygon(const LaurentPoly& p);

} // namespace dimer
