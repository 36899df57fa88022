#pragma once

#include <map>
#include <memory>
#include <vector>

#include "dimer/laurent.hpp"
#include "dimer/skew_form.hpp"

namespace dimer {

// Laurent polynomial in the single quantization variable q.
class QLaurent {
public:
    QLaurent() = default;
    explicit QLaurent(const Rational& c) {
        if (c != 0) c_[0] = c;
    }
    static QLaurent qpow(long long e, Rational c = Rational(1)) {
        QLaurent p;
        if (c != 0) p.c_[e] = std::move(c);
        return p;
    }

    const std::map<long long, Rational>& coeffs() const { return c_; }
    bool isZero() const { return c_.empty(); }

    QLaurent operator-() const;
    QLaurent& operator+=(const QLaurent& o);
    QLaurent& operator-=(const QLaurent& o);
    QLaurent operator*(const QLaurent& o) const;
    bool operator==(const QLaurent& o) const { return c_ == o.c_; }

    Rational evalAtOne() const;
    QLaurent derivative() const;
    std::string str() const;

private:
    std::map<long long, Rational> c_;  // q-exponent -> coefficient
};

// Element of the quantum torus algebra of a lattice with skew form:
// X_u X_w = q^{(u,w)} X_{u+w}, coefficients in Q[q,q^-1].
class QuantumTorusElement {
public:
    using Vec = std::vector<long long>;

    QuantumTorusElement() = default;
    explicit QuantumTorusElement(std::shared_ptr<const SkewForm> form) : form_(std::move(form)) {}

    static QuantumTorusElement character(std::shared_ptr<const SkewForm> form, Vec v,
                                         QLaurent c = QLaurent(Rational(1)));

    const std::shared_ptr<const SkewForm>& form() const { return form_; }
    const std::map<Vec, QLaurent>& terms() const { return terms_; }
    bool isZero() const { return terms_.empty(); }
    size_t termCount() const { return terms_.size(); }

    void addTerm(const Vec& v, const QLaurent& c);

    QuantumTorusElement operator-() const;
    QuantumTorusElement operator+(const QuantumTorusElement& o) const;
    QuantumTorusElement operator-(const QuantumTorusElement& o) const;
    // Quantum torus product (bilinear extension of the q-twisted rule).
    QuantumTorusElement operator*(const QuantumTorusElement& o) const;
    QuantumTorusElement scale(const QLaurent& c) const;
    bool operator==(const QuantumTorusElement& o) const;

    std::string str() const;

private:
    std::shared_ptr<const SkewForm> form_;
    std::map<Vec, QLaurent> terms_;
    void checkCompatible(const QuantumTorusElement& o) const;
};

QuantumTorusElement qt_commutator(const QuantumTorusElement& a, const QuantumTorusElement& b);

// Classical limit q = 1, written as a Laurent polynomial in basis coordinates
// named varPrefix0, varPrefix1, ...
LaurentPoly specialize_q1(const QuantumTorusElement& a, const std::string& varPrefix = "X");

} // namespace dimer
