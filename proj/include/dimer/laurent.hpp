#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dimer/rational.hpp"

namespace dimer {

// Multivariate Laurent polynomial with exact rational coefficients.
//
// Terms are kept in a std::map ordered lexicographically by exponent vector,
// which makes serialization and hashing deterministic. No zero coefficient is
// ever stored. Binary operations unify the variable lists by name.
class LaurentPoly {
public:
    using Exp = std::vector<int>;

    LaurentPoly() = default;
    explicit LaurentPoly(const Rational& c);
    explicit LaurentPoly(long c) : LaurentPoly(Rational(c)) {}

    static LaurentPoly variable(const std::string& name, int exp = 1);
    static LaurentPoly monomial(std::vector<std::string> vars, Exp e, Rational c);

    const std::vector<std::string>& vars() const { return vars_; }
    const std::map<Exp, Rational>& terms() const { return terms_; }

    bool isZero() const { return terms_.empty(); }
    bool isConstant() const;
    bool isMonomial() const { return terms_.size() == 1; }
    Rational constantValue() const;  // requires isConstant()
    size_t termCount() const { return terms_.size(); }

    // Coefficient of an exponent vector (arity must match vars()).
    Rational coeff(const Exp& e) const;

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(LaurentPoly a, const LaurentPoly& b) { return a *= b; }
    LaurentPoly operator*(const Rational& c) const;

    // n >= 0 always works; n < 0 requires a monomial.
    LaurentPoly pow(int n) const;

    bool operator==(const LaurentPoly& o) const;
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    // Exact evaluation; every variable of the poly must be present and nonzero
    // wherever it appears with a negative exponent.
    Rational eval(const std::map<std::string, Rational>& point) const;

    // Substitutes polynomials for variables. A variable occurring with a
    // negative exponent must be replaced by a monomial.
    LaurentPoly substitute(const std::map<std::string, LaurentPoly>& repl) const;

    // Exact division; throws if the division leaves a remainder.
    LaurentPoly divExact(const LaurentPoly& d) const;

    // Partial derivative in one variable.
    LaurentPoly derivative(const std::string& var) const;

    // Multiset of exponent vectors (the support), used for Newton polygons.
    std::vector<Exp> support() const;

    // Rewrites onto the given variable list (a superset by name).
    LaurentPoly withVars(const std::vector<std::string>& vars) const;

    // Minimal exponent of each variable over the support (0 for empty poly).
    Exp minExponents() const;

    // Canonical text form: terms sorted lex by exponent vector, e.g.
    //   -1*z1^-1*z2^0 + 1*z1^1*z2^1
    std::string str() const;

    // Rewrites both polynomials onto the union of their variable lists.
    static void unifyPublic(LaurentPoly& a, LaurentPoly& b) { unify(a, b); }

    // Parses the canonical text form (also accepts bare rational constants).
    static LaurentPoly parse(const std::string& text);

private:
    std::vector<std::string> vars_;
    std::map<Exp, Rational> terms_;

    void addTerm(const Exp& e, const Rational& c);
    static void unify(LaurentPoly& a, LaurentPoly& b);
    friend class RationalExpr;
};

inline LaurentPoly operator*(const Rational& c, const LaurentPoly& p) { return p * c; }

} // namespace dimer
