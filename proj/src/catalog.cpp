#include "dimer/catalog.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace dimer {

BipartiteTorusGraph honeycomb() {
    std::vector<Color> colors{Color::Black, Color::White};
    std::vector<BipartiteTorusGraph::Edge> edges{
        {0, 1, {0, 0}}, {0, 1, {1, 0}}, {0, 1, {0, 1}}};
    std::vector<std::vector<int>> rot{{0, 1, 2}, {0, 1, 2}};
    return BipartiteTorusGraph(std::move(colors), std::move(edges), std::move(rot));
}

namespace {

struct Lattice {
    long long a, b, c, d;
    long long det() const { return a * d - b * c; }
    // Membership: (x,y) = m(a,b) + n(c,d) with integers m,n.
    std::optional<Disp> coords(long long x, long long y) const {
        long long D = det();
        long long mn = x * d - y * c;
        long long nn = a * y - b * x;
        if (mn % D || nn % D) return std::nullopt;
        return Disp{mn / D, nn / D};
    }
};

} // namespace

BipartiteTorusGraph gridQuotient(long long a, long long b, long long c, long long d) {
    if (a * d - b * c < 0) {
        // keep the homology basis positively oriented in the plane
        std::swap(a, c);
        std::swap(b, d);
    }
    Lattice L{a, b, c, d};
    if (L.det() == 0) throw std::invalid_argument("gridQuotient: degenerate lattice");
    if ((a + b) % 2 || (c + d) % 2)
        throw std::invalid_argument("gridQuotient: lattice must preserve the coloring");
    long long n = std::abs(L.det());

    // Collect canonical representatives by closure from the origin.
    std::vector<Disp> reps{{0, 0}};
    auto find = [&](Disp p) -> int {
        for (size_t i = 0; i < reps.size(); ++i)
            if (L.coords(p[0] - reps[i][0], p[1] - reps[i][1])) return static_cast<int>(i);
        return -1;
    };
    for (size_t i = 0; i < reps.size() && static_cast<long long>(reps.size()) < n; ++i) {
        for (Disp dir : {Disp{1, 0}, Disp{0, 1}, Disp{-1, 0}, Disp{0, -1}}) {
            Disp p = reps[i] + dir;
            if (find(p) < 0) reps.push_back(p);
        }
    }
    if (static_cast<long long>(reps.size()) != n)
        throw std::logic_error("gridQuotient: representative count mismatch");

    std::vector<Color> colors(reps.size());
    for (size_t i = 0; i < reps.size(); ++i)
        colors[i] = ((reps[i][0] + reps[i][1]) % 2 + 2) % 2 == 0 ? Color::Black : Color::White;

    const Disp dirs[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    std::vector<BipartiteTorusGraph::Edge> edges;
    // at each white, incident edges keyed by the direction towards the black end
    std::vector<std::array<int, 4>> whiteSlots(reps.size(), {-1, -1, -1, -1});
    std::vector<std::vector<int>> rot(reps.size());
    for (size_t i = 0; i < reps.size(); ++i) {
        if (colors[i] != Color::Black) continue;
        for (int k = 0; k < 4; ++k) {
            Disp p = reps[i] + dirs[k];
            int j = find(p);
            Disp off = {p[0] - reps[j][0], p[1] - reps[j][1]};
            Disp disp = *L.coords(off[0], off[1]);
            int e = static_cast<int>(edges.size());
            edges.push_back({static_cast<int>(i), j, disp});
            rot[i].push_back(e);  // black rotation: dirs in ccw order already
            whiteSlots[j][(k + 2) % 4] = e;  // direction from white towards black
        }
    }
    for (size_t i = 0; i < reps.size(); ++i) {
        if (colors[i] != Color::White) continue;
        for (int k = 0; k < 4; ++k) {
            if (whiteSlots[i][k] < 0) throw std::logic_error("gridQuotient: missing white slot");
            rot[i].push_back(whiteSlots[i][k]);
        }
    }
    return BipartiteTorusGraph(std::move(colors), std::move(edges), std::move(rot));
}

BipartiteTorusGraph catalogGraph(const std::string& name) {
    if (name == "honeycomb") return honeycomb();
    if (name == "grid2") return gridQuotient(2, 0, 0, 2);
    if (name == "grid4") return gridQuotient(4, 0, 0, 4);
    if (name == "grid11") return gridQuotient(1, 1, 1, -1);
    throw std::invalid_argument("unknown catalog graph: " + name);
}

} // namespace dimer
