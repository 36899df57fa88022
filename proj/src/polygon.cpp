#include "dimer/polygon.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace dimer {

namespace {

long long cross(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Monotone chain; strictly convex output (collinear points dropped).
std::vector<LatticePoint> hull(std::vector<LatticePoint> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    size_t n = pts.size();
    if (n <= 2) return pts;
    std::vector<LatticePoint> h(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    size_t lower = k + 1;
    for (size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    if (h.size() == 2 && h[0] == h[1]) h.resize(1);
    return h;  // counterclockwise, starts at the lex-smallest point
}

} // namespace

NewtonPolygon NewtonPolygon::fromPoints(const std::vector<LatticePoint>& pts) {
    NewtonPolygon n;
    if (pts.empty()) return n;
    n.verts_ = hull(pts);
    // Hull output starts at the lex-min vertex already; translate it to 0.
    LatticePoint base = n.verts_[0];
    for (auto& v : n.verts_) {
        v[0] -= base[0];
        v[1] -= base[1];
    }
    return n;
}

Rational NewtonPolygon::area() const {
    if (verts_.size() < 3) return 0;
    long long twice = 0;
    for (size_t i = 0; i < verts_.size(); ++i) {
        const auto& a = verts_[i];
        const auto& b = verts_[(i + 1) % verts_.size()];
        twice += a[0] * b[1] - a[1] * b[0];
    }
    return rat(twice, 2);
}

std::vector<LatticePoint> NewtonPolygon::boundaryEdges() const {
    if (isDegenerate()) throw std::invalid_argument("boundaryEdges: degenerate polygon");
    std::vector<LatticePoint> out;
    for (size_t i = 0; i < verts_.size(); ++i) {
        const auto& a = verts_[i];
        const auto& b = verts_[(i + 1) % verts_.size()];
        long long dx = b[0] - a[0], dy = b[1] - a[1];
        long long g = std::gcd(std::abs(dx), std::abs(dy));
        for (long long k = 0; k < g; ++k) out.push_back({dx / g, dy / g});
    }
    return out;
}

NewtonPolygon::Counts NewtonPolygon::latticeCounts() const {
    Counts c{0, 0, area()};
    if (verts_.empty()) return c;
    if (verts_.size() == 1) {
        c.boundary = 1;
        return c;
    }
    if (verts_.size() == 2) {
        const auto& a = verts_[0];
        const auto& b = verts_[1];
        c.boundary = std::gcd(std::abs(b[0] - a[0]), std::abs(b[1] - a[1])) + 1;
        return c;
    }
    for (size_t i = 0; i < verts_.size(); ++i) {
        const auto& a = verts_[i];
        const auto& b = verts_[(i + 1) % verts_.size()];
        c.boundary += std::gcd(std::abs(b[0] - a[0]), std::abs(b[1] - a[1]));
    }
    long long xlo = 0, xhi = 0, ylo = 0, yhi = 0;
    for (const auto& v : verts_) {
        xlo = std::min(xlo, v[0]);
        xhi = std::max(xhi, v[0]);
        ylo = std::min(ylo, v[1]);
        yhi = std::max(yhi, v[1]);
    }
    for (long long x = xlo; x <= xhi; ++x)
        for (long long y = ylo; y <= yhi; ++y) {
            bool strict = true;
            for (size_t i = 0; i < verts_.size() && strict; ++i) {
                const auto& a = verts_[i];
                const auto& b = verts_[(i + 1) % verts_.size()];
                if (cross(a, b, {x, y}) <= 0) strict = false;
            }
            if (strict) ++c.interior;
        }
    return c;
}

std::optional<std::array<Rational, 2>> NewtonPolygon::symmetryCenter() const {
    if (negated() != *this) return std::nullopt;
    // center = (min + max)/2 of the normalized representative
    long long xlo = 0, ylo = 0, xmax = 0, ymax = 0;
    bool first = true;
    for (const auto& v : verts_) {
        if (first) {
            xlo = xmax = v[0];
            ylo = ymax = v[1];
            first = false;
        }
        xlo = std::min(xlo, v[0]);
        xmax = std::max(xmax, v[0]);
        ylo = std::min(ylo, v[1]);
        ymax = std::max(ymax, v[1]);
    }
    return std::array<Rational, 2>{rat(xlo + xmax, 2), rat(ylo + ymax, 2)};
}

NewtonPolygon NewtonPolygon::negated() const {
    std::vector<LatticePoint> pts;
    for (const auto& v : verts_) pts.push_back({-v[0], -v[1]});
    return fromPoints(pts);
}

NewtonPolygon NewtonPolygon::scaled(long long k) const {
    std::vector<LatticePoint> pts;
    for (const auto& v : verts_) pts.push_back({k * v[0], k * v[1]});
    return fromPoints(pts);
}

std::string NewtonPolygon::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < verts_.size(); ++i)
        os << (i ? " " : "") << "(" << verts_[i][0] << "," << verts_[i][1] << ")";
    os << "]";
    return os.str();
}

NewtonPolygon lp_newton_polygon(const LaurentPoly& p) {
    if (p.isZero()) throw std::invalid_argument("newton polygon of zero polynomial");
    if (p.vars().size() != 2) throw std::invalid_argument("newton polygon needs 2 variables");
    std::vector<LatticePoint> pts;
    for (const auto& e : p.support()) pts.push_back({e[0], e[1]});
    return NewtonPolygon::fromPoints(pts);
}

} // namespace dimer
