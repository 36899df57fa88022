#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dimer/quantum_torus.hpp"

using namespace dimer;

namespace {

std::shared_ptr<const SkewForm> formWith(int dim, std::vector<std::array<int, 3>> entries) {
    SkewForm f(dim);
    for (auto [i, j, v] : entries) f.setTwice(i, j, 2 * v);
    return std::make_shared<const SkewForm>(f);
}

QuantumTorusElement X(std::shared_ptr<const SkewForm> f, std::vector<long long> v) {
    return QuantumTorusElement::character(std::move(f), std::move(v));
}

} // namespace

TEST_CASE("product rule X_u X_w = q^(u,w) X_{u+w}") {
    auto f = formWith(2, {{0, 1, 1}});  // (e0,e1) = 1
    auto a = X(f, {1, 0}) * X(f, {0, 1});
    REQUIRE(a.termCount() == 1);
    CHECK(a.terms().begin()->first == std::vector<long long>{1, 1});
    CHECK(a.terms().begin()->second == QLaurent::qpow(1));
}

TEST_CASE("commuting case") {
    auto f = formWith(2, {});
    auto a = X(f, {1, 0}) * X(f, {0, 1});
    CHECK(a == X(f, {1, 1}));
}

TEST_CASE("(X_u + X_w) X_u with (u,w)=2") {
    auto f = formWith(2, {{0, 1, 2}});
    auto u = X(f, {1, 0});
    auto w = X(f, {0, 1});
    auto r = (u + w) * u;
    // X_u X_u = X_2u ; X_w X_u = q^{(w,u)} X_{u+w} = q^{-2} X_{u+w}
    auto expected = X(f, {2, 0}) +
                    QuantumTorusElement::character(f, {1, 1}, QLaurent::qpow(-2));
    CHECK(r == expected);
}

TEST_CASE("commutator formula and trivial cases") {
    auto f = formWith(2, {{0, 1, 1}});
    auto c = qt_commutator(X(f, {1, 0}), X(f, {0, 1}));
    QLaurent qminus = QLaurent::qpow(1) * QLaurent(Rational(1));
    qminus -= QLaurent::qpow(-1);
    CHECK(c == QuantumTorusElement::character(f, {1, 1}, qminus));

    CHECK(qt_commutator(X(f, {1, 0}), X(f, {1, 0})).isZero());
    auto f0 = formWith(2, {});
    CHECK(qt_commutator(X(f0, {1, 0}), X(f0, {0, 1})).isZero());
}

TEST_CASE("associativity on random triples") {
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> dimD(1, 4), vecD(-3, 3), pairD(-2, 2), nterms(1, 3);
    for (int trial = 0; trial < 120; ++trial) {
        int dim = dimD(rng);
        SkewForm f(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = i + 1; j < dim; ++j) f.setTwice(i, j, 2 * pairD(rng));
        auto fp = std::make_shared<const SkewForm>(f);
        auto randomElem = [&] {
            QuantumTorusElement e(fp);
            int k = nterms(rng);
            for (int t = 0; t < k; ++t) {
                std::vector<long long> v(dim);
                for (auto& x : v) x = vecD(rng);
                e.addTerm(v, QLaurent::qpow(pairD(rng), Rational(vecD(rng))));
            }
            return e;
        };
        auto a = randomElem(), b = randomElem(), c = randomElem();
        CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("specialize at q=1") {
    auto f = formWith(2, {{0, 1, 1}});
    auto a = QuantumTorusElement::character(f, {2, -1}, QLaurent::qpow(3));
    LaurentPoly p = specialize_q1(a);
    CHECK(p == LaurentPoly::monomial({"X0", "X1"}, {2, -1}, 1));
    QLaurent d = QLaurent::qpow(1);
    d -= QLaurent::qpow(-1);
    CHECK(specialize_q1(QuantumTorusElement::character(f, {1, 1}, d)).isZero());
}

TEST_CASE("commutator derivative at q=1 matches Poisson bracket") {
    // d/dq [X_u, X_w] |_{q=1} = 2 (u,w) X_{u+w}
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> vecD(-2, 2), pairD(-3, 3);
    for (int trial = 0; trial < 50; ++trial) {
        SkewForm f(3);
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) f.setTwice(i, j, 2 * pairD(rng));
        auto fp = std::make_shared<const SkewForm>(f);
        std::vector<long long> u(3), w(3);
        for (auto& x : u) x = vecD(rng);
        for (auto& x : w) x = vecD(rng);
        auto c = qt_commutator(X(fp, u), X(fp, w));
        // commutator vanishes at q=1
        CHECK(specialize_q1(c).isZero());
        long long p = fp->pairInt(u, w);
        Rational derivAtOne = 0;
        if (!c.isZero()) derivAtOne = c.terms().begin()->second.derivative().evalAtOne();
        CHECK(derivAtOne == rat(2 * p));
    }
}
