#include "dimer/quantum_torus.hpp"

#include <sstream>

namespace dimer {

QLaurent QLaurent::operator-() const {
    QLaurent out;
    for (const auto& [e, c] : c_) out.c_[e] = -c;
    return out;
}

QLaurent& QLaurent::operator+=(const QLaurent& o) {
    for (const auto& [e, c] : o.c_) {
        auto it = c_.find(e);
        if (it == c_.end()) {
            c_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) c_.erase(it);
        }
    }
    return *this;
}

QLaurent& QLaurent::operator-=(const QLaurent& o) { return *this += -o; }

QLaurent QLaurent::operator*(const QLaurent& o) const {
    QLaurent out;
    for (const auto& [e1, c1] : c_)
        for (const auto& [e2, c2] : o.c_) {
            Rational c = c1 * c2;
            auto it = out.c_.find(e1 + e2);
            if (it == out.c_.end()) {
                if (c != 0) out.c_.emplace(e1 + e2, c);
            } else {
                it->second += c;
                if (it->second == 0) out.c_.erase(it);
            }
        }
    return out;
}

Rational QLaurent::evalAtOne() const {
    Rational s = 0;
    for (const auto& [e, c] : c_) s += c;
    return s;
}

QLaurent QLaurent::derivative() const {
    QLaurent out;
    for (const auto& [e, c] : c_)
        if (e != 0) out.c_[e - 1] = c * rat(e);
    return out;
}

std::string QLaurent::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : c_) {
        if (!first) os << " + ";
        first = false;
        os << ratStr(c) << "*q^" << e;
    }
    return os.str();
}

QuantumTorusElement QuantumTorusElement::character(std::shared_ptr<const SkewForm> form, Vec v,
                                                   QLaurent c) {
    QuantumTorusElement e(std::move(form));
    if (static_cast<int>(v.size()) != e.form_->dim())
        throw std::invalid_argument("character arity mismatch");
    if (!c.isZero()) e.terms_.emplace(std::move(v), std::move(c));
    return e;
}

void QuantumTorusElement::addTerm(const Vec& v, const QLaurent& c) {
    auto it = terms_.find(v);
    if (it == terms_.end()) {
        if (!c.isZero()) terms_.emplace(v, c);
    } else {
        it->second += c;
        if (it->second.isZero()) terms_.erase(it);
    }
}

void QuantumTorusElement::checkCompatible(const QuantumTorusElement& o) const {
    if (!form_ || !o.form_) throw std::logic_error("quantum torus element without form");
    if (!(*form_ == *o.form_)) throw std::invalid_argument("quantum torus form mismatch");
}

QuantumTorusElement QuantumTorusElement::operator-() const {
    QuantumTorusElement out(form_);
    for (const auto& [v, c] : terms_) out.terms_[v] = -c;
    return out;
}

QuantumTorusElement QuantumTorusElement::operator+(const QuantumTorusElement& o) const {
    checkCompatible(o);
    QuantumTorusElement out = *this;
    for (const auto& [v, c] : o.terms_) out.addTerm(v, c);
    return out;
}

QuantumTorusElement QuantumTorusElement::operator-(const QuantumTorusElement& o) const {
    checkCompatible(o);
    QuantumTorusElement out = *this;
    for (const auto& [v, c] : o.terms_) out.addTerm(v, -c);
    return out;
}

QuantumTorusElement QuantumTorusElement::operator*(const QuantumTorusElement& o) const {
    checkCompatible(o);
    QuantumTorusElement out(form_);
    for (const auto& [u, cu] : terms_)
        for (const auto& [w, cw] : o.terms_) {
            long long p = form_->pairInt(u, w);  // X_u X_w = q^{(u,w)} X_{u+w}
            Vec s(u.size());
            for (size_t i = 0; i < s.size(); ++i) s[i] = u[i] + w[i];
            out.addTerm(s, QLaurent::qpow(p) * cu * cw);
        }
    return out;
}

QuantumTorusElement QuantumTorusElement::scale(const QLaurent& c) const {
    QuantumTorusElement out(form_);
    for (const auto& [v, t] : terms_) out.addTerm(v, t * c);
    return out;
}

bool QuantumTorusElement::operator==(const QuantumTorusElement& o) const {
    checkCompatible(o);
    return terms_ == o.terms_;
}

std::string QuantumTorusElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [v, c] : terms_) {
        if (!first) os << "  +  ";
        first = false;
        os << "(" << c.str() << ")*X[";
        for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
        os << "]";
    }
    return os.str();
}

QuantumTorusElement qt_commutator(const QuantumTorusElement& a, const QuantumTorusElement& b) {
    return a * b - b * a;
}

LaurentPoly specialize_q1(const QuantumTorusElement& a, const std::string& varPrefix) {
    int dim = a.form() ? a.form()->dim() : 0;
    std::vector<std::string> vars;
    vars.reserve(dim);
    for (int i = 0; i < dim; ++i) vars.push_back(varPrefix + std::to_string(i));
    LaurentPoly out = LaurentPoly::monomial(vars, LaurentPoly::Exp(dim, 0), 0);
    for (const auto& [v, c] : a.terms()) {
        LaurentPoly::Exp e(v.begin(), v.end());
        out += LaurentPoly::monomial(vars, std::move(e), c.evalAtOne());
    }
    return out;
}

} // namespace dimer
