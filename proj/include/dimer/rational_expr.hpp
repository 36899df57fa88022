#pragma once

#include "dimer/laurent.hpp"

namespace dimer {

// Quotient of two Laurent polynomials. Equality is decided exactly by
// cross-multiplication; normalization only strips common monomial content,
// full gcd simplification is out of scope.
class RationalExpr {
public:
    RationalExpr() : num_(Rational(0)), den_(Rational(1)) {}
    RationalExpr(LaurentPoly num, LaurentPoly den);
    explicit RationalExpr(const LaurentPoly& p) : RationalExpr(p, LaurentPoly(Rational(1))) {}
    explicit RationalExpr(const Rational& c) : RationalExpr(LaurentPoly(c)) {}

    static RationalExpr variable(const std::string& name, int exp = 1) {
        return RationalExpr(LaurentPoly::variable(name, exp));
    }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    bool isZero() const { return num_.isZero(); }

    RationalExpr operator-() const;
    RationalExpr operator+(const RationalExpr& o) const;
    RationalExpr operator-(const RationalExpr& o) const;
    RationalExpr operator*(const RationalExpr& o) const;
    RationalExpr operator/(const RationalExpr& o) const;
    RationalExpr pow(int n) const;
    RationalExpr inverse() const;

    bool operator==(const RationalExpr& o) const;
    bool operator!=(const RationalExpr& o) const { return !(*this == o); }

    // Substitutes rational expressions for variables.
    RationalExpr substitute(const std::map<std::string, RationalExpr>& repl) const;

    // True when num/den reduces to a single monomial (denominator divides).
    bool isMonomial() const;

    std::string str() const;

private:
    LaurentPoly num_, den_;
    void normalize();
};

} // namespace dimer
