#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dimer/polygon.hpp"

using namespace dimer;

namespace {

NewtonPolygon unitTriangle() { return NewtonPolygon::fromPoints({{0, 0}, {1, 0}, {0, 1}}); }

long long countMultiset(const std::vector<LatticePoint>& v, LatticePoint p) {
    return std::count(v.begin(), v.end(), p);
}

} // namespace

TEST_CASE("newton polygon of support") {
    LaurentPoly p = LaurentPoly::variable("z1") + LaurentPoly::variable("z2") +
                    (LaurentPoly::variable("z1") * LaurentPoly::variable("z2")).pow(-1);
    NewtonPolygon n = lp_newton_polygon(p.withVars({"z1", "z2"}));
    CHECK(n == NewtonPolygon::fromPoints({{1, 0}, {0, 1}, {-1, -1}}));
    CHECK_THROWS(lp_newton_polygon(LaurentPoly()));
}

TEST_CASE("newton polygon of a constant") {
    LaurentPoly c = LaurentPoly::monomial({"z1", "z2"}, {0, 0}, 5);
    NewtonPolygon n = lp_newton_polygon(c);
    CHECK(n.vertices().size() == 1);
}

TEST_CASE("newton polygon of Laplacian-style support") {
    auto z1 = LaurentPoly::variable("z1"), z2 = LaurentPoly::variable("z2");
    LaurentPoly p = LaurentPoly(2L) - z1 - z1.pow(-1) + LaurentPoly(2L) - z2 - z2.pow(-1);
    NewtonPolygon n = lp_newton_polygon(p.withVars({"z1", "z2"}));
    CHECK(n == NewtonPolygon::fromPoints({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}));
}

TEST_CASE("translation invariance") {
    auto z1 = LaurentPoly::variable("z1"), z2 = LaurentPoly::variable("z2");
    LaurentPoly p = z1 + z2 + LaurentPoly(1L);
    LaurentPoly m = (z1.pow(-4) * z2.pow(7));
    CHECK(lp_newton_polygon(p.withVars({"z1", "z2"})) ==
          lp_newton_polygon((p * m).withVars({"z1", "z2"})));
}

TEST_CASE("boundary edges") {
    auto tri = unitTriangle();
    auto e = tri.boundaryEdges();
    REQUIRE(e.size() == 3);
    CHECK(countMultiset(e, {1, 0}) == 1);
    CHECK(countMultiset(e, {-1, 1}) == 1);
    CHECK(countMultiset(e, {0, -1}) == 1);

    auto sq2 = NewtonPolygon::fromPoints({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
    auto e2 = sq2.boundaryEdges();
    REQUIRE(e2.size() == 8);
    for (LatticePoint d : {LatticePoint{1, 0}, LatticePoint{0, 1}, LatticePoint{-1, 0},
                           LatticePoint{0, -1}})
        CHECK(countMultiset(e2, d) == 2);

    auto diam = NewtonPolygon::fromPoints({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
    auto e3 = diam.boundaryEdges();
    REQUIRE(e3.size() == 4);
    for (LatticePoint d : {LatticePoint{-1, 1}, LatticePoint{-1, -1}, LatticePoint{1, -1},
                           LatticePoint{1, 1}})
        CHECK(countMultiset(e3, d) == 1);

    // boundary edges always sum to zero
    long long sx = 0, sy = 0;
    for (auto d : e2) {
        sx += d[0];
        sy += d[1];
    }
    CHECK(sx == 0);
    CHECK(sy == 0);
}

TEST_CASE("lattice counts") {
    auto c = unitTriangle().latticeCounts();
    CHECK(c.interior == 0);
    CHECK(c.boundary == 3);
    CHECK(c.area == Rational(1, 2));

    auto c2 = NewtonPolygon::fromPoints({{0, 0}, {2, 0}, {2, 2}, {0, 2}}).latticeCounts();
    CHECK(c2.interior == 1);
    CHECK(c2.boundary == 8);
    CHECK(c2.area == 4);

    auto c3 = NewtonPolygon::fromPoints({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}).latticeCounts();
    CHECK(c3.interior == 1);
    CHECK(c3.boundary == 4);
    CHECK(c3.area == 2);
}

TEST_CASE("central symmetry") {
    auto diam = NewtonPolygon::fromPoints({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
    auto c = diam.symmetryCenter();
    REQUIRE(c.has_value());
    CHECK_FALSE(unitTriangle().symmetryCenter().has_value());
    auto hexa = NewtonPolygon::fromPoints({{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}});
    CHECK(hexa.symmetryCenter().has_value());
}

TEST_CASE("pick identity fuzz") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<long long> coord(-5, 5);
    std::uniform_int_distribution<int> npts(3, 12);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<LatticePoint> pts;
        int k = npts(rng);
        for (int i = 0; i < k; ++i) pts.push_back({coord(rng), coord(rng)});
        auto poly = NewtonPolygon::fromPoints(pts);
        if (poly.isDegenerate()) continue;
        auto c = poly.latticeCounts();
        CHECK(rat(2 * c.interior + c.boundary - 2) == 2 * c.area);
    }
}
