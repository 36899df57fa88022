#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dimer/det.hpp"
#include "dimer/laurent.hpp"
#include "dimer/rational_expr.hpp"

using namespace dimer;

namespace {

LaurentPoly z1() { return LaurentPoly::variable("z1"); }
LaurentPoly z2() { return LaurentPoly::variable("z2"); }

// Signed permutation-sum determinant, the oracle for lp_det on small n.
LaurentPoly detPermanentOracle(const LPMatrix& m) {
    size_t n = m.size();
    std::vector<size_t> perm(n);
    for (size_t i = 0; i < n; ++i) perm[i] = i;
    LaurentPoly acc;
    do {
        int inv = 0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inv;
        LaurentPoly term(Rational(1));
        for (size_t i = 0; i < n; ++i) term *= m[i][perm[i]];
        if (inv % 2) acc -= term;
        else acc += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

} // namespace

TEST_CASE("difference of squares") {
    LaurentPoly p = (z1() + LaurentPoly(1L)) * (z1() - LaurentPoly(1L));
    CHECK(p == z1() * z1() - LaurentPoly(1L));
}

TEST_CASE("additive identity") {
    LaurentPoly p = z1() * z2() + z1().pow(-3);
    CHECK(p + LaurentPoly() == p);
}

TEST_CASE("square of z1 + z2 + 1/(z1 z2)") {
    LaurentPoly base = z1() + z2() + (z1() * z2()).pow(-1);
    LaurentPoly sq = base * base;
    LaurentPoly expected = z1().pow(2) + z2().pow(2) + (z1() * z2()).pow(-2) +
                           Rational(2) * z1() * z2() + Rational(2) * z2().pow(-1) +
                           Rational(2) * z1().pow(-1);
    CHECK(sq == expected);
    // cross-check both sides numerically at z1=2, z2=3
    std::map<std::string, Rational> pt{{"z1", 2}, {"z2", 3}};
    CHECK(sq.eval(pt) == base.eval(pt) * base.eval(pt));
    CHECK(expected.eval(pt) == sq.eval(pt));
}

TEST_CASE("canonical serialization matches spec format") {
    LaurentPoly p = z1() * z2() - z1().pow(-1);
    CHECK(p.str() == "-1*z1^-1*z2^0 + 1*z1^1*z2^1");
    CHECK(LaurentPoly::parse(p.str()) == p);
}

TEST_CASE("parse round trip with rationals") {
    LaurentPoly p = LaurentPoly::monomial({"a", "b"}, {2, -5}, Rational(-7, 3)) +
                    LaurentPoly::monomial({"a", "b"}, {0, 1}, Rational(1, 2));
    CHECK(LaurentPoly::parse(p.str()) == p);
}

TEST_CASE("exact division") {
    LaurentPoly p = (z1() + z2()) * (z1() - z2()) * z1().pow(-3);
    CHECK(p.divExact(z1() + z2()) == (z1() - z2()) * z1().pow(-3));
    CHECK_THROWS(p.divExact(z1() + LaurentPoly(1L)));
}

TEST_CASE("lp_det 2x2") {
    LPMatrix m{{z1(), LaurentPoly(1L)}, {LaurentPoly(1L), z2()}};
    CHECK(lp_det(m) == z1() * z2() - LaurentPoly(1L));
}

TEST_CASE("lp_det identity 4x4") {
    LPMatrix m(4, std::vector<LaurentPoly>(4));
    for (int i = 0; i < 4; ++i) m[i][i] = LaurentPoly(1L);
    CHECK(lp_det(m) == LaurentPoly(1L));
}

TEST_CASE("lp_det agrees with permutation sum on random matrices") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> coef(-3, 3), expo(-2, 2), pick(0, 2);
    for (int trial = 0; trial < 8; ++trial) {
        size_t n = 3 + trial % 3;  // 3..5
        LPMatrix m(n, std::vector<LaurentPoly>(n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                int c = coef(rng);
                m[i][j] = LaurentPoly::monomial({"z1", "z2"}, {expo(rng), expo(rng)}, c);
                if (pick(rng) == 0) m[i][j] += LaurentPoly(Rational(coef(rng)));
            }
        LaurentPoly oracle = detPermanentOracle(m);
        CHECK(lp_det(m) == oracle);
        CHECK(lp_det_sparse(m) == oracle);
    }
}

TEST_CASE("rational expr equality and substitution") {
    RationalExpr x = RationalExpr::variable("x");
    RationalExpr y = RationalExpr::variable("y");
    RationalExpr one{Rational(1)};
    RationalExpr r = (x * x - y * y) / (x - y);
    CHECK(r == x + y);  // cross-multiplication equality
    RationalExpr w = (one + x).inverse();
    std::map<std::string, RationalExpr> sub{{"x", y * y}};
    CHECK(w.substitute(sub) == (one + y * y).inverse());
    CHECK((x.pow(-2) * y).isMonomial());
    CHECK_FALSE((one + x).isMonomial());
}
