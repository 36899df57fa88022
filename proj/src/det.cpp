#include "dimer/det.hpp"

#include <stdexcept>
#include <unordered_map>

namespace dimer {

namespace {

void checkSquare(const LPMatrix& m) {
    for (const auto& row : m)
        if (row.size() != m.size()) throw std::invalid_argument("det: matrix not square");
}

LaurentPoly detCofactor(const LPMatrix& m) {
    size_t n = m.size();
    if (n == 0) return LaurentPoly(Rational(1));
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    LaurentPoly acc;
    for (size_t j = 0; j < n; ++j) {
        if (m[0][j].isZero()) continue;
        LPMatrix minor(n - 1, std::vector<LaurentPoly>(n - 1));
        for (size_t r = 1; r < n; ++r) {
            size_t cc = 0;
            for (size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor[r - 1][cc++] = m[r][c];
            }
        }
        LaurentPoly term = m[0][j] * detCofactor(minor);
        if (j % 2) acc -= term;
        else acc += term;
    }
    return acc;
}

LaurentPoly detBareiss(LPMatrix m) {
    size_t n = m.size();
    // Clear negative exponents per row; track the extracted monomial factor.
    LaurentPoly factor(Rational(1));
    for (size_t i = 0; i < n; ++i) {
        std::vector<std::string> vars;
        for (const auto& p : m[i])
            for (const auto& v : p.vars())
                if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
        LaurentPoly::Exp lo(vars.size(), 0);
        for (auto& p : m[i]) {
            if (p.isZero()) continue;
            LaurentPoly q = p.withVars(vars);
            auto mn = q.minExponents();
            for (size_t k = 0; k < vars.size(); ++k) lo[k] = std::min(lo[k], mn[k]);
            p = std::move(q);
        }
        bool shift = false;
        for (int v : lo) shift |= v != 0;
        if (shift) {
            LaurentPoly mono = LaurentPoly::monomial(vars, lo, 1);
            factor *= mono;
            for (auto& p : m[i]) {
                if (!p.isZero()) p = p.divExact(mono);
            }
        }
    }
    int sign = 1;
    LaurentPoly prevPivot(Rational(1));
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].isZero()) {
            size_t swap = k + 1;
            while (swap < n && m[swap][k].isZero()) ++swap;
            if (swap == n) return LaurentPoly();  // singular
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                LaurentPoly t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = t.divExact(prevPivot);
            }
            m[i][k] = LaurentPoly();
        }
        prevPivot = m[k][k];
    }
    LaurentPoly det = m[n - 1][n - 1] * factor;
    return sign < 0 ? -det : det;
}

} // namespace

LaurentPoly lp_det(const LPMatrix& m) {
    checkSquare(m);
    if (m.size() <= 3) return detCofactor(m);
    return detBareiss(m);
}

LaurentPoly lp_det_sparse(const LPMatrix& m) {
    checkSquare(m);
    size_t n = m.size();
    if (n == 0) return LaurentPoly(Rational(1));
    if (n > 24) throw std::invalid_argument("lp_det_sparse: matrix too large");
    std::unordered_map<uint32_t, LaurentPoly> memo;
    // det of rows [popcount(mask)..n) restricted to columns in mask.
    auto rec = [&](auto&& self, uint32_t mask) -> const LaurentPoly& {
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        size_t row = n - static_cast<size_t>(__builtin_popcount(mask));
        LaurentPoly acc;
        if (row == n) {
            acc = LaurentPoly(Rational(1));
        } else {
            int parity = 0;
            for (size_t j = 0; j < n; ++j) {
                if (!(mask & (1u << j))) continue;
                if (!m[row][j].isZero()) {
                    LaurentPoly term = m[row][j] * self(self, mask & ~(1u << j));
                    if (parity % 2) acc -= term;
                    else acc += term;
                }
                ++parity;
            }
        }
        return memo.emplace(mask, std::move(acc)).first->second;
    };
    return rec(rec, n == 32 ? ~0u : ((1u << n) - 1));
}

} // namespace dimer
