#pragma once

#include <gmpxx.h>
#include <string>
#include <vector>

namespace dimer {

// Exact arbitrary-precision rational, the coefficient ring for everything here.
using Rational = mpq_class;

// gmpxx has no long long constructors; long is 64-bit on every platform we
// target, so funnel all integer conversions through here.
inline Rational rat(long long num, long long den = 1) {
    Rational r(static_cast<long>(num), static_cast<long>(den));
    r.canonicalize();
    return r;
}

inline std::string ratStr(const Rational& r) {
    return r.get_str();
}

// Parses "p" or "p/q". Throws std::invalid_argument on malformed input.
Rational parseRational(const std::string& s);

inline int ratSign(const Rational& r) { return sgn(r); }

} // namespace dimer
