#include "dimer/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <sstream>

namespace dimer {

Rational parseRational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational");
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)) && c != '-' && c != '+' && c != '/')
            throw std::invalid_argument("malformed rational: " + s);
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: " + s);
    r.canonicalize();
    return r;
}

LaurentPoly::LaurentPoly(const Rational& c) {
    if (c != 0) terms_[Exp{}] = c;
}

LaurentPoly LaurentPoly::variable(const std::string& name, int exp) {
    LaurentPoly p;
    p.vars_ = {name};
    p.terms_[Exp{exp}] = 1;
    return p;
}

LaurentPoly LaurentPoly::monomial(std::vector<std::string> vars, Exp e, Rational c) {
    if (vars.size() != e.size()) throw std::invalid_argument("monomial arity mismatch");
    LaurentPoly p;
    p.vars_ = std::move(vars);
    if (c != 0) p.terms_[std::move(e)] = std::move(c);
    return p;
}

bool LaurentPoly::isConstant() const {
    if (terms_.empty()) return true;
    if (terms_.size() != 1) return false;
    const Exp& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

Rational LaurentPoly::constantValue() const {
    if (terms_.empty()) return 0;
    if (!isConstant()) throw std::logic_error("not a constant");
    return terms_.begin()->second;
}

Rational LaurentPoly::coeff(const Exp& e) const {
    if (e.size() != vars_.size()) throw std::invalid_argument("coeff arity mismatch");
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

void LaurentPoly::addTerm(const Exp& e, const Rational& c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (c != 0) terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

LaurentPoly LaurentPoly::withVars(const std::vector<std::string>& vars) const {
    std::vector<int> pos(vars_.size(), -1);
    for (size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::find(vars.begin(), vars.end(), vars_[i]);
        if (it == vars.end()) throw std::invalid_argument("withVars: missing " + vars_[i]);
        pos[i] = static_cast<int>(it - vars.begin());
    }
    LaurentPoly out;
    out.vars_ = vars;
    for (const auto& [e, c] : terms_) {
        Exp ne(vars.size(), 0);
        for (size_t i = 0; i < e.size(); ++i) ne[pos[i]] = e[i];
        out.terms_[std::move(ne)] = c;
    }
    return out;
}

void LaurentPoly::unify(LaurentPoly& a, LaurentPoly& b) {
    if (a.vars_ == b.vars_) return;
    std::vector<std::string> u = a.vars_;
    for (const auto& v : b.vars_)
        if (std::find(u.begin(), u.end(), v) == u.end()) u.push_back(v);
    a = a.withVars(u);
    b = b.withVars(u);
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    LaurentPoly b = o;
    unify(*this, b);
    for (const auto& [e, c] : b.terms_) addTerm(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    LaurentPoly b = o;
    unify(*this, b);
    for (const auto& [e, c] : b.terms_) addTerm(e, -c);
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
    LaurentPoly b = o;
    unify(*this, b);
    std::map<Exp, Rational> out;
    for (const auto& [e1, c1] : terms_) {
        for (const auto& [e2, c2] : b.terms_) {
            Exp e = e1;
            for (size_t i = 0; i < e.size(); ++i) e[i] += e2[i];
            Rational c = c1 * c2;
            auto it = out.find(e);
            if (it == out.end()) {
                if (c != 0) out.emplace(std::move(e), std::move(c));
            } else {
                it->second += c;
                if (it->second == 0) out.erase(it);
            }
        }
    }
    terms_ = std::move(out);
    return *this;
}

LaurentPoly LaurentPoly::operator*(const Rational& c) const {
    LaurentPoly out;
    out.vars_ = vars_;
    if (c == 0) return out;
    for (const auto& [e, v] : terms_) out.terms_[e] = v * c;
    return out;
}

LaurentPoly LaurentPoly::pow(int n) const {
    if (n < 0) {
        if (!isMonomial()) throw std::invalid_argument("negative power of non-monomial");
        const auto& [e, c] = *terms_.begin();
        Exp ne(e.size());
        for (size_t i = 0; i < e.size(); ++i) ne[i] = e[i] * n;
        Rational nc = 1;
        Rational inv = 1 / c;
        for (int i = 0; i < -n; ++i) nc *= inv;
        LaurentPoly out;
        out.vars_ = vars_;
        out.terms_[std::move(ne)] = std::move(nc);
        return out;
    }
    LaurentPoly acc(Rational(1));
    LaurentPoly base = *this;
    while (n > 0) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
    if (vars_ == o.vars_) return terms_ == o.terms_;
    LaurentPoly a = *this, b = o;
    unify(a, b);
    return a.terms_ == b.terms_;
}

Rational LaurentPoly::eval(const std::map<std::string, Rational>& point) const {
    Rational total = 0;
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (size_t i = 0; i < vars_.size(); ++i) {
            if (e[i] == 0) continue;
            auto it = point.find(vars_[i]);
            if (it == point.end()) throw std::invalid_argument("eval: missing " + vars_[i]);
            Rational v = it->second;
            int k = e[i];
            if (k < 0) {
                if (v == 0) throw std::domain_error("eval: zero at negative exponent");
                v = 1 / v;
                k = -k;
            }
            for (int j = 0; j < k; ++j) t *= v;
        }
        total += t;
    }
    return total;
}

LaurentPoly LaurentPoly::substitute(const std::map<std::string, LaurentPoly>& repl) const {
    LaurentPoly total;
    for (const auto& [e, c] : terms_) {
        LaurentPoly t(c);
        for (size_t i = 0; i < vars_.size(); ++i) {
            if (e[i] == 0) continue;
            auto it = repl.find(vars_[i]);
            LaurentPoly base = it != repl.end() ? it->second : variable(vars_[i]);
            t *= base.pow(e[i]);
        }
        total += t;
    }
    return total;
}

LaurentPoly::Exp LaurentPoly::minExponents() const {
    Exp m(vars_.size(), 0);
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (first) { m = e; first = false; continue; }
        for (size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
    }
    return m;
}

LaurentPoly LaurentPoly::divExact(const LaurentPoly& d) const {
    if (d.isZero()) throw std::domain_error("division by zero polynomial");
    if (isZero()) { LaurentPoly z; z.vars_ = vars_; return z; }
    LaurentPoly a = *this, b = d;
    unify(a, b);
    // Shift so both operands are honest polynomials, divide, shift back.
    Exp sa = a.minExponents(), sb = b.minExponents();
    size_t n = a.vars_.size();
    auto shift = [&](LaurentPoly& p, const Exp& s, int sign) {
        std::map<Exp, Rational> t;
        for (const auto& [e, c] : p.terms_) {
            Exp ne = e;
            for (size_t i = 0; i < n; ++i) ne[i] += sign * s[i];
            t.emplace(std::move(ne), c);
        }
        p.terms_ = std::move(t);
    };
    shift(a, sa, -1);
    shift(b, sb, -1);
    // Long division by leading term w.r.t. the lex order of the term map.
    LaurentPoly q;
    q.vars_ = a.vars_;
    const auto& [eb, cb] = *b.terms_.rbegin();
    while (!a.terms_.empty()) {
        const auto& [ea, ca] = *a.terms_.rbegin();
        Exp eq(n);
        for (size_t i = 0; i < n; ++i) {
            eq[i] = ea[i] - eb[i];
            if (eq[i] < 0) throw std::domain_error("divExact: not divisible");
        }
        Rational cq = ca / cb;
        LaurentPoly m;
        m.vars_ = a.vars_;
        m.terms_[eq] = cq;
        q.addTerm(eq, cq);
        a -= m * b;
    }
    Exp back(n);
    for (size_t i = 0; i < n; ++i) back[i] = sa[i] - sb[i];
    shift(q, back, 1);
    return q;
}

LaurentPoly LaurentPoly::derivative(const std::string& var) const {
    auto it = std::find(vars_.begin(), vars_.end(), var);
    LaurentPoly out;
    out.vars_ = vars_;
    if (it == vars_.end()) return out;
    size_t idx = static_cast<size_t>(it - vars_.begin());
    for (const auto& [e, c] : terms_) {
        if (e[idx] == 0) continue;
        Exp ne = e;
        ne[idx] -= 1;
        out.addTerm(ne, c * rat(e[idx]));
    }
    return out;
}

std::vector<LaurentPoly::Exp> LaurentPoly::support() const {
    std::vector<Exp> out;
    out.reserve(terms_.size());
    for (const auto& [e, c] : terms_) out.push_back(e);
    return out;
}

std::string LaurentPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << ratStr(c);
        for (size_t i = 0; i < vars_.size(); ++i) os << '*' << vars_[i] << '^' << e[i];
    }
    return os.str();
}

namespace {

// Minimal parser for the canonical serialization produced by str().
struct TermParser {
    const std::string& s;
    size_t i = 0;
    explicit TermParser(const std::string& text) : s(text) {}
    void ws() { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; }
    bool eof() { ws(); return i >= s.size(); }
    std::string token(const char* stop) {
        ws();
        size_t j = i;
        while (j < s.size() && !std::strchr(stop, s[j]) &&
               !std::isspace(static_cast<unsigned char>(s[j])))
            ++j;
        std::string t = s.substr(i, j - i);
        i = j;
        return t;
    }
};

} // namespace

LaurentPoly LaurentPoly::parse(const std::string& text) {
    TermParser p(text);
    LaurentPoly out;
    bool negate = false;
    while (!p.eof()) {
        if (p.s[p.i] == '+') { p.i++; negate = false; continue; }
        if (p.s[p.i] == '-') {
            // Either a separator "- " or the sign of the coefficient.
            size_t save = p.i;
            p.i++;
            p.ws();
            if (p.i < p.s.size() && (std::isdigit(static_cast<unsigned char>(p.s[p.i])))) {
                p.i = save;  // part of the number
            } else {
                negate = true;
                continue;
            }
        }
        std::string coefTok = p.token("*+");
        Rational c = parseRational(coefTok);
        if (negate) c = -c;
        negate = false;
        std::vector<std::string> vars;
        Exp exps;
        while (!p.eof() && p.s[p.i] == '*') {
            p.i++;
            std::string var = p.token("^");
            if (p.eof() || p.s[p.i] != '^') throw std::invalid_argument("expected ^ after " + var);
            p.i++;
            p.ws();
            bool eneg = false;
            if (p.i < p.s.size() && (p.s[p.i] == '-' || p.s[p.i] == '+')) {
                eneg = p.s[p.i] == '-';
                p.i++;
            }
            std::string ex = p.token("*+- ");
            int e = std::stoi(ex);
            vars.push_back(var);
            exps.push_back(eneg ? -e : e);
        }
        out += monomial(std::move(vars), std::move(exps), std::move(c));
    }
    return out;
}

} // namespace dimer
