#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dimer/rational.hpp"

namespace dimer {

// Skew-symmetric bilinear form on Z^dim. Entries are stored doubled so that
// the half-integer local pairings stay exact; the API exposes rationals.
class SkewForm {
public:
    SkewForm() : dim_(0) {}
    explicit SkewForm(int dim) : dim_(dim), twice_(dim, std::vector<long long>(dim, 0)) {}

    int dim() const { return dim_; }

    void setTwice(int i, int j, long long v) {
        twice_[i][j] = v;
        twice_[j][i] = -v;
    }
    long long twiceEntry(int i, int j) const { return twice_[i][j]; }
    Rational entry(int i, int j) const { return rat(twice_[i][j], 2); }

    // Doubled value of (u, v).
    template <class Vec>
    long long pairTwice(const Vec& u, const Vec& v) const {
        if (static_cast<int>(u.size()) != dim_ || static_cast<int>(v.size()) != dim_)
            throw std::invalid_argument("SkewForm: arity mismatch");
        long long s = 0;
        for (int i = 0; i < dim_; ++i) {
            if (u[i] == 0) continue;
            for (int j = 0; j < dim_; ++j) {
                if (v[j] == 0) continue;
                s += static_cast<long long>(u[i]) * v[j] * twice_[i][j];
            }
        }
        return s;
    }

    // Integer value of (u, v); throws when the pairing is half-integral.
    template <class Vec>
    long long pairInt(const Vec& u, const Vec& v) const {
        long long t = pairTwice(u, v);
        if (t % 2 != 0) throw std::logic_error("SkewForm: half-integer pairing");
        return t / 2;
    }

    template <class Vec>
    Rational pair(const Vec& u, const Vec& v) const {
        return rat(pairTwice(u, v), 2);
    }

    bool operator==(const SkewForm& o) const { return dim_ == o.dim_ && twice_ == o.twice_; }

    bool isIntegerMatrix() const {
        for (const auto& row : twice_)
            for (long long v : row)
                if (v % 2 != 0) return false;
        return true;
    }

private:
    int dim_;
    std::vector<std::vector<long long>> twice_;
};

} // namespace dimer
