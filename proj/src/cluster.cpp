#include "dimer/cluster.hpp"

namespace dimer {

Seed seed_from_graph(const BipartiteTorusGraph& g) {
    HomologyBasis basis(g);
    Seed s;
    s.form = basis.epsilonForm();
    for (int f = 0; f < g.numFaces(); ++f) s.vectors.push_back(basis.decompose(g.faceCycle(f)));
    return s;
}

Seed mutate_seed(const Seed& s, int k) {
    if (k < 0 || k >= static_cast<int>(s.vectors.size()))
        throw std::invalid_argument("mutate_seed: bad index");
    Seed out;
    out.form = s.form;
    out.vectors = s.vectors;
    const auto& ek = s.vectors[k];
    for (size_t i = 0; i < s.vectors.size(); ++i) {
        if (static_cast<int>(i) == k) continue;
        long long p = s.form.pairInt(s.vectors[i], ek);
        if (p > 0)
            for (int j = 0; j < s.dim(); ++j) out.vectors[i][j] += p * ek[j];
    }
    for (int j = 0; j < s.dim(); ++j) out.vectors[k][j] = -ek[j];
    return out;
}

RationalExpr x_mutation_pullback(const RationalExpr& expr, const Seed& s, int k) {
    int n = static_cast<int>(s.vectors.size());
    RationalExpr xk = RationalExpr::variable("X" + std::to_string(k));
    RationalExpr one{Rational(1)};
    std::map<std::string, RationalExpr> repl;
    repl["X" + std::to_string(k)] = xk.inverse();
    for (int i = 0; i < n; ++i) {
        if (i == k) continue;
        long long p = s.form.pairInt(s.vectors[i], s.vectors[k]);
        if (p == 0) continue;
        RationalExpr xi = RationalExpr::variable("X" + std::to_string(i));
        int sgn = p > 0 ? 1 : -1;
        RationalExpr factor = (one + xk.pow(-sgn)).pow(static_cast<int>(-p));
        repl["X" + std::to_string(i)] = xi * factor;
    }
    return expr.substitute(repl);
}

SpiderWeights spider_facemap(const SpiderWeights& w) {
    RationalExpr one{Rational(1)};
    SpiderWeights out;
    out.W = w.W.inverse();
    out.W1 = w.W1 * (one + w.W);
    out.W3 = w.W3 * (one + w.W);
    out.W2 = w.W2 * (one + w.W.inverse()).inverse();
    out.W4 = w.W4 * (one + w.W.inverse()).inverse();
    return out;
}

std::array<RationalExpr, 6> spider_local_invariants(const std::array<RationalExpr, 6>& x) {
    const auto& [a, b, c, d, e, f] = x;
    bool allZero = true;
    for (const auto& v : x) allZero &= v.isZero();
    if (allZero) throw std::invalid_argument("spider_local_invariants: zero weights");
    // p12, p13, p14, p23, p24, p34
    return {b * f, b * e + d * c, c * f, a * d, a * f, a * e};
}

std::array<RationalExpr, 6> spider_local_invariants_primed(const std::array<RationalExpr, 6>& x) {
    const auto& [A, B, C, D, E, F] = x;
    bool allZero = true;
    for (const auto& v : x) allZero &= v.isZero();
    if (allZero) throw std::invalid_argument("spider_local_invariants: zero weights");
    return {C * F, E * F, D * E, B * F, A * C + B * D, A * E};
}

std::array<RationalExpr, 6> spider_edge_transport(const std::array<RationalExpr, 6>& x) {
    const auto& [a, b, c, d, e, f] = x;
    RationalExpr delta = b * e + d * c;
    RationalExpr one{Rational(1)};
    // A = ae/Delta, B = ad/Delta, C = bf/Delta, D = cf/Delta, E = F = 1.
    return {a * e / delta, a * d / delta, b * f / delta, c * f / delta, one, one};
}

QTRational quantum_mutation(const QuantumTorusElement& elem, const Seed& s, int k) {
    if (!elem.form() || !(*elem.form() == s.form))
        throw std::invalid_argument("quantum_mutation: form mismatch");
    auto form = elem.form();
    const auto& ek = s.vectors[k];
    // max positive pairing determines the common denominator
    long long maxPos = 0;
    for (const auto& [v, c] : elem.terms()) maxPos = std::max(maxPos, form->pairInt(v, ek));

    auto onePlus = [&](long long qexp) {
        // 1 + q^qexp X_{e_k}
        QuantumTorusElement t = QuantumTorusElement::character(
            form, std::vector<long long>(ek.begin(), ek.end()), QLaurent::qpow(qexp));
        t.addTerm(std::vector<long long>(s.dim(), 0), QLaurent(Rational(1)));
        return t;
    };

    QTRational out;
    out.num = QuantumTorusElement(form);
    out.den = QuantumTorusElement::character(form, std::vector<long long>(s.dim(), 0));
    for (long long a = 1; a <= maxPos; ++a) out.den = out.den * onePlus(-(2 * a - 1));

    for (const auto& [v, c] : elem.terms()) {
        long long p = form->pairInt(v, ek);
        QuantumTorusElement term = QuantumTorusElement::character(form, v, c);
        if (p < 0) {
            for (long long a = 1; a <= -p; ++a) term = term * onePlus(2 * a - 1);
        }
        // complete the common denominator: multiply by the factors this term
        // does not need, i.e. a = p+1 .. maxPos (or 1..maxPos when p <= 0)
        for (long long a = std::max(p, 0LL) + 1; a <= maxPos; ++a)
            term = term * onePlus(-(2 * a - 1));
        out.num = out.num + term;
    }
    return out;
}

bool qtRationalEqual(const QTRational& a, const QTRational& b) {
    // denominators are polynomials in a single character, so they commute
    return a.num * b.den == b.num * a.den;
}

CommutationReport check_commuting(const std::vector<QuantumTorusElement>& elems) {
    CommutationReport rep;
    for (size_t i = 0; i < elems.size(); ++i)
        for (size_t j = i + 1; j < elems.size(); ++j) {
            if (!qt_commutator(elems[i], elems[j]).isZero()) {
                rep.allCommute = false;
                rep.badA = static_cast<int>(i);
                rep.badB = static_cast<int>(j);
                return rep;
            }
        }
    return rep;
}

bool isCentralVector(const SkewForm& form, const std::vector<long long>& v) {
    for (int i = 0; i < form.dim(); ++i) {
        std::vector<long long> ei(form.dim(), 0);
        ei[i] = 1;
        if (form.pairTwice(v, ei) != 0) return false;
    }
    return true;
}

RationalExpr poisson_bracket(const RationalExpr& f, const RationalExpr& g, const Seed& s) {
    int n = static_cast<int>(s.vectors.size());
    auto d = [&](const RationalExpr& h, int i) {
        std::string v = "X" + std::to_string(i);
        LaurentPoly dn = h.num().derivative(v), dd = h.den().derivative(v);
        // (n/d)' = (n' d - n d') / d^2
        return RationalExpr(dn * h.den() - h.num() * dd, h.den() * h.den());
    };
    std::vector<RationalExpr> df(n), dg(n);
    std::vector<char> need(n, 0);
    RationalExpr acc{Rational(0)};
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            long long eps = s.pairing(i, j);
            if (eps == 0) continue;
            if (!need[i]) {
                df[i] = d(f, i);
                dg[i] = d(g, i);
                need[i] = 1;
            }
            if (!need[j]) {
                df[j] = d(f, j);
                dg[j] = d(g, j);
                need[j] = 1;
            }
            RationalExpr xi = RationalExpr::variable("X" + std::to_string(i));
            RationalExpr xj = RationalExpr::variable("X" + std::to_string(j));
            acc = acc + RationalExpr{LaurentPoly(static_cast<long>(eps))} * xi * xj *
                            (df[i] * dg[j] - df[j] * dg[i]);
        }
    return acc;
}

bool classical_bracket_vanishes(const QuantumTorusElement& a, const QuantumTorusElement& b) {
    if (!(*a.form() == *b.form())) throw std::invalid_argument("bracket: form mismatch");
    std::map<std::vector<long long>, Rational> acc;
    for (const auto& [u, cu] : a.terms())
        for (const auto& [v, cv] : b.terms()) {
            long long p = a.form()->pairInt(u, v);
            if (p == 0) continue;
            std::vector<long long> s(u.size());
            for (size_t i = 0; i < s.size(); ++i) s[i] = u[i] + v[i];
            auto& slot = acc[s];
            slot += rat(p) * cu.evalAtOne() * cv.evalAtOne();
            if (slot == 0) acc.erase(s);
        }
    return acc.empty();
}

LaurentPoly characterMonomial(const std::vector<long long>& v, const std::string& prefix) {
    std::vector<std::string> vars;
    LaurentPoly::Exp e;
    for (size_t i = 0; i < v.size(); ++i) {
        vars.push_back(prefix + std::to_string(i));
        e.push_back(static_cast<int>(v[i]));
    }
    return LaurentPoly::monomial(std::move(vars), std::move(e), 1);
}

} // namespace dimer

