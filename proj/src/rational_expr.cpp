#include "dimer/rational_expr.hpp"

namespace dimer {

RationalExpr::RationalExpr(LaurentPoly num, LaurentPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.isZero()) throw std::domain_error("RationalExpr: zero denominator");
    normalize();
}

void RationalExpr::normalize() {
    if (num_.isZero()) {
        den_ = LaurentPoly(Rational(1));
        return;
    }
    // Strip common monomial content so expressions stay small. Cancel the
    // monomial gcd of all terms of num and den, then scale the denominator's
    // lex-leading coefficient to 1.
    LaurentPoly n = num_, d = den_;
    LaurentPoly::unify(n, d);
    auto mn = n.minExponents(), md = d.minExponents();
    LaurentPoly::Exp shift(mn.size());
    for (size_t i = 0; i < mn.size(); ++i) shift[i] = std::min(mn[i], md[i]);
    bool nonzero = false;
    for (int s : shift) nonzero |= s != 0;
    if (nonzero) {
        LaurentPoly m = LaurentPoly::monomial(n.vars(), shift, 1);
        n = n.divExact(m);
        d = d.divExact(m);
    }
    Rational lead = d.terms().rbegin()->second;
    if (lead != 1) {
        n = n * (1 / lead);
        d = d * (1 / lead);
    }
    // Monomial denominators always cancel into the numerator exponents.
    if (d.isMonomial()) {
        n = n.divExact(d);
        d = LaurentPoly(Rational(1));
    }
    num_ = std::move(n);
    den_ = std::move(d);
}

RationalExpr RationalExpr::operator-() const {
    RationalExpr r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

RationalExpr RationalExpr::operator+(const RationalExpr& o) const {
    return RationalExpr(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalExpr RationalExpr::operator-(const RationalExpr& o) const {
    return RationalExpr(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalExpr RationalExpr::operator*(const RationalExpr& o) const {
    return RationalExpr(num_ * o.num_, den_ * o.den_);
}

RationalExpr RationalExpr::operator/(const RationalExpr& o) const {
    if (o.isZero()) throw std::domain_error("RationalExpr: division by zero");
    return RationalExpr(num_ * o.den_, den_ * o.num_);
}

RationalExpr RationalExpr::inverse() const {
    if (isZero()) throw std::domain_error("RationalExpr: inverse of zero");
    return RationalExpr(den_, num_);
}

RationalExpr RationalExpr::pow(int n) const {
    if (n < 0) return inverse().pow(-n);
    RationalExpr acc(Rational(1));
    RationalExpr base = *this;
    while (n > 0) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

bool RationalExpr::operator==(const RationalExpr& o) const {
    return num_ * o.den_ == o.num_ * den_;
}

RationalExpr RationalExpr::substitute(const std::map<std::string, RationalExpr>& repl) const {
    auto subPoly = [&](const LaurentPoly& p) {
        RationalExpr total(Rational(0));
        for (const auto& [e, c] : p.terms()) {
            RationalExpr t{LaurentPoly(c)};
            for (size_t i = 0; i < p.vars().size(); ++i) {
                if (e[i] == 0) continue;
                auto it = repl.find(p.vars()[i]);
                RationalExpr base =
                    it != repl.end() ? it->second : RationalExpr::variable(p.vars()[i]);
                t = t * base.pow(e[i]);
            }
            total = total + t;
        }
        return total;
    };
    return subPoly(num_) / subPoly(den_);
}

bool RationalExpr::isMonomial() const {
    if (num_.isZero()) return false;
    if (!num_.isMonomial()) return false;
    return den_.isMonomial() || den_.isConstant();
}

std::string RationalExpr::str() const {
    if (den_.isConstant() && den_.constantValue() == 1) return num_.str();
    return "(" + num_.str() + ") / (" + den_.str() + ")";
}

} // namespace dimer
