#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dimer/catalog.hpp"
#include "dimer/dimer_model.hpp"
#include "dimer/minimality.hpp"

using namespace dimer;

TEST_CASE("honeycomb matchings and partition function") {
    auto g = honeycomb();
    auto ms = enumerate_matchings(g);
    REQUIRE(ms.size() == 3);  // one per edge

    auto signs = kasteleyn_signs(g);
    CHECK(faceSignProduct(g, signs, 0) == 1);  // l = 6: (-1)^{6/2+1} = +1

    auto w = formalEdgeWeights(g);
    LaurentPoly p = partition_function(g, w, signs);
    CHECK(p.termCount() == 3);
    // det K equals the signed matching sum term by term
    LaurentPoly sum;
    for (const auto& m : ms)
        sum += matchingMonomial(g, m, w) * Rational(matchingSign(g, m, signs));
    CHECK(p == sum);
    // support gives the unit triangle
    CHECK(newton_check(g, NewtonPolygon::fromPoints({{0, 0}, {1, 0}, {0, 1}})));
    CHECK_FALSE(newton_check(g, NewtonPolygon::fromPoints({{0, 0}, {2, 0}, {0, 2}})));
}

TEST_CASE("kasteleyn signs on quad faces") {
    auto g = catalogGraph("grid2");
    auto signs = kasteleyn_signs(g);
    for (int f = 0; f < g.numFaces(); ++f) CHECK(faceSignProduct(g, signs, f) == -1);  // l = 4
}

TEST_CASE("matching signs constant per mod-2 homology class") {
    for (const char* name : {"honeycomb", "grid2", "grid11", "grid4"}) {
        auto g = catalogGraph(name);
        auto signs = kasteleyn_signs(g);
        auto phi = alpha_phi(g);
        std::map<std::array<long long, 2>, int> classSign;
        for (const auto& m : enumerate_matchings(g)) {
            Cycle c = matching_class_chain(g, m, phi);
            Disp d{0, 0};
            for (const auto& [e, k] : c.coef) d = d + k * g.edge(e).disp;
            std::array<long long, 2> mod2{((d[0] % 2) + 2) % 2, ((d[1] % 2) + 2) % 2};
            int s = matchingSign(g, m, signs);
            auto [it, fresh] = classSign.emplace(mod2, s);
            INFO(name);
            CHECK(it->second == s);
        }
    }
}

TEST_CASE("det K equals signed matching sum on catalog graphs") {
    for (const char* name : {"grid2", "grid11", "grid4"}) {
        auto g = catalogGraph(name);
        auto signs = kasteleyn_signs(g);
        auto w = formalEdgeWeights(g);
        LaurentPoly det = partition_function(g, w, signs);
        LaurentPoly sum;
        for (const auto& m : enumerate_matchings(g))
            sum += matchingMonomial(g, m, w) * Rational(matchingSign(g, m, signs));
        INFO(name);
        CHECK(det == sum);
    }
}

TEST_CASE("alpha phi: default vertex map is a perfect matching") {
    for (const char* name : {"honeycomb", "grid2", "grid4"}) {
        auto g = catalogGraph(name);
        auto phi = alpha_phi(g);
        REQUIRE(phi.integral);
        Matching m;
        for (int e = 0; e < g.numEdges(); ++e)
            if (phi.phi[e] == 1) m.push_back(e);
        auto ms = enumerate_matchings(g);
        INFO(name);
        CHECK(std::find(ms.begin(), ms.end(), m) != ms.end());
    }
}

TEST_CASE("generic rational alpha gives a fractional matching") {
    auto g = honeycomb();
    // order has 3 zig-zags; assign strictly increasing values around the circle
    auto base = alpha_phi(g);
    std::vector<Rational> alpha(3);
    Rational vals[3] = {Rational(0), Rational(1, 3), Rational(2, 3)};
    for (size_t i = 0; i < 3; ++i) alpha[base.order[i]] = vals[i];
    auto am = alpha_phi(g, alpha);
    CHECK_FALSE(am.integral);
    for (int e = 0; e < g.numEdges(); ++e) {
        CHECK(am.phi[e] > 0);
        CHECK(am.phi[e] < 1);
    }
    CHECK(inMatchingPolytope(g, am.phi));

    // non-monotone alpha must be rejected
    std::vector<Rational> bad(3);
    bad[base.order[0]] = Rational(0);
    bad[base.order[1]] = Rational(2, 3);
    bad[base.order[2]] = Rational(1, 3);
    CHECK_THROWS(alpha_phi(g, bad));
}

TEST_CASE("matching classes of the honeycomb") {
    auto g = honeycomb();
    auto phi = alpha_phi(g);
    std::set<std::array<long long, 2>> classes;
    for (const auto& m : enumerate_matchings(g)) {
        Cycle c = matching_class_chain(g, m, phi);
        Disp d{0, 0};
        for (const auto& [e, k] : c.coef) d = d + k * g.edge(e).disp;
        classes.insert({d[0], d[1]});
    }
    CHECK(classes.size() == 3);
    // the three classes are the lattice points of a unit triangle
    std::vector<LatticePoint> pts(classes.begin(), classes.end());
    auto n = NewtonPolygon::fromPoints(pts);
    CHECK(n == NewtonPolygon::fromPoints({{0, 0}, {1, 0}, {0, 1}}));
    // the matching underlying phi itself maps to the zero chain
    Matching m0;
    for (int e = 0; e < g.numEdges(); ++e)
        if (phi.phi[e] == 1) m0.push_back(e);
    CHECK(matching_class_chain(g, m0, phi).coef.empty());
}

TEST_CASE("hamiltonian counts by polygon") {
    {
        auto hs = hamiltonians(honeycomb());
        CHECK(hs.hamiltonians.empty());  // no interior points
        CHECK(hs.casimirs.size() == 3);
        // casimir vectors sum to zero
        std::vector<long long> sum(hs.dim, 0);
        for (const auto& c : hs.casimirs)
            for (int i = 0; i < hs.dim; ++i) sum[i] += c[i];
        for (auto v : sum) CHECK(v == 0);
    }
    {
        auto hs = hamiltonians(catalogGraph("grid2"));
        REQUIRE(hs.hamiltonians.size() == 1);
        const auto& h = hs.hamiltonians.begin()->second;
        CHECK(h.termCount() == 4);  // 2c1 + 2c2 at the central coefficient
        CHECK(hs.casimirs.size() == 4);
    }
    {
        auto hs = hamiltonians(catalogGraph("grid4"));
        CHECK(hs.hamiltonians.size() == 5);  // doubled square: i(N) = 5
        CHECK(hs.casimirs.size() == 8);
    }
}

TEST_CASE("boundary classes are single characters with positive multiplicity") {
    for (const char* name : {"honeycomb", "grid2"}) {
        auto hs = hamiltonians(catalogGraph(name));
        for (const auto& [a, part] : hs.boundaryParts) {
            INFO(name);
            CHECK(part.termCount() == 1);
            CHECK(part.terms().begin()->second.evalAtOne() > 0);
        }
    }
}

TEST_CASE("count identity 2 i(N) = dim - 1 - (e(N) - 1)") {
    for (const char* name : {"honeycomb", "grid2", "grid4"}) {
        auto g = catalogGraph(name);
        auto hs = hamiltonians(g);
        auto counts = hs.polygon.latticeCounts();
        INFO(name);
        CHECK(static_cast<long long>(hs.hamiltonians.size()) == counts.interior);
        // 2 i = dim L - dim center = (F+1) - (e-1)
        CHECK(2 * counts.interior == (g.numFaces() + 1) - (counts.boundary - 1));
        // triple-crossing / face count identity F = 2 area(N)
        CHECK(rat(g.numFaces()) == 2 * counts.area);
    }
}

TEST_CASE("matching polytope vertices are the perfect matchings") {
    for (const char* name : {"honeycomb", "grid2"}) {
        auto g = catalogGraph(name);
        auto verts = matching_polytope_vertices(g);
        auto ms = enumerate_matchings(g);
        INFO(name);
        REQUIRE(verts.size() == ms.size());
        std::set<std::vector<Rational>> vset(verts.begin(), verts.end());
        for (const auto& m : ms) {
            std::vector<Rational> x(g.numEdges(), 0);
            for (int e : m) x[e] = 1;
            CHECK(vset.count(x) == 1);
        }
    }
}

TEST_CASE("newton check for grid graphs") {
    CHECK(newton_check(catalogGraph("grid2"),
                       NewtonPolygon::fromPoints({{1, 0}, {0, 1}, {-1, 0}, {0, -1}})));
    CHECK(newton_check(catalogGraph("grid4"),
                       NewtonPolygon::fromPoints({{2, 0}, {0, 2}, {-2, 0}, {0, -2}})));
    CHECK(newton_check(catalogGraph("grid11"),
                       NewtonPolygon::fromPoints({{0, 0}, {1, 0}, {1, 1}, {0, 1}})));
}

TEST_CASE("zig-zag classes match polygon boundary for catalog graphs") {
    for (const char* name : {"honeycomb", "grid2", "grid4"}) {
        auto g = catalogGraph(name);
        auto hs = hamiltonians(g);
        auto be = hs.polygon.boundaryEdges();
        std::multiset<std::pair<long long, long long>> fromPolygon, fromZigzags;
        for (auto d : be) fromPolygon.insert({d[0], d[1]});
        for (const auto& z : g.zigzags()) fromZigzags.insert({z.cls[0], z.cls[1]});
        INFO(name);
        CHECK(fromPolygon == fromZigzags);
    }
}

TEST_CASE("unbalanced graph has no matchings") {
    // two blacks sharing a single white: a valid torus embedding (one face of
    // length 8) with no perfect matching
    std::vector<Color> colors{Color::Black, Color::Black, Color::White};
    std::vector<BipartiteTorusGraph::Edge> edges{
        {0, 2, {0, 0}}, {0, 2, {1, 0}}, {1, 2, {0, 0}}, {1, 2, {0, 1}}};
    std::vector<std::vector<int>> rot{{0, 1}, {2, 3}, {0, 2, 1, 3}};
    BipartiteTorusGraph g(colors, edges, rot);
    CHECK(g.numFaces() == 1);
    CHECK(enumerate_matchings(g).empty());
    CHECK_THROWS(kasteleyn_signs(g));
    CHECK_THROWS(partition_function(g, formalEdgeWeights(g), KasteleynSigns{{1, 1, 1, 1}, {1, 1}}));
}
