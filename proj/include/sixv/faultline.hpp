#pragma once

// Edge two-coloring relative to the red ground state, monochromatic
// bridges/crosses, the diagonal dual lattice L_n with its per-configuration
// subgraph L_x, fault lines and almost fault lines, and the injective
// Peierls map that reverses all edges on one side of a fault line.

#include <array>
#include <cstdlib>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "lattice.hpp"

namespace sixv {

// red[e] = true iff edge e is oriented as in the red ground state x_R.
inline std::vector<std::uint8_t> color_edges(const Configuration& c) {
    Configuration xr = ground_state_red(c.n);
    Lattice lat(c.n);
    std::vector<std::uint8_t> red(lat.num_edges());
    for (int e = 0; e < lat.num_edges(); ++e) red[e] = (c.kept(e) == xr.kept(e));
    return red;
}

// Invariant from the six-type case analysis: every internal vertex touches an
// even number of red edges, and if exactly two then they are rotationally
// adjacent (never an opposite pair {W,E} or {S,N}).
inline bool coloring_invariants_ok(const Configuration& c) {
    Lattice lat(c.n);
    auto red = color_edges(c);
    for (int j = 0; j < c.n; ++j)
        for (int i = 0; i < c.n; ++i) {
            auto ve = lat.vertex_edges(i, j);
            bool w = red[ve[0]], e = red[ve[1]], s = red[ve[2]], n = red[ve[3]];
            int k = int(w) + int(e) + int(s) + int(n);
            if (k % 2 != 0) return false;
            if (k == 2 && ((w && e) || (s && n))) return false;
        }
    return true;
}

// Monochromatic bridge: a path of same-colored edges from a horizontal stub
// on the left boundary to one on the right (horizontal), or bottom stub to
// top stub (vertical).  `want_red` selects the color.
inline bool has_bridge(const Configuration& c, bool want_red, bool horizontal) {
    Lattice lat(c.n);
    const int n = c.n;
    auto red = color_edges(c);
    auto col = [&](int e) { return bool(red[e]) == want_red; };

    std::vector<std::uint8_t> seen(n * n, 0);
    std::queue<std::pair<int, int>> q;
    auto push = [&](int i, int j) {
        if (!seen[j * n + i]) {
            seen[j * n + i] = 1;
            q.emplace(i, j);
        }
    };
    if (horizontal) {
        for (int j = 0; j < n; ++j)
            if (col(lat.h_edge(j, 0))) push(0, j);
    } else {
        for (int i = 0; i < n; ++i)
            if (col(lat.v_edge(i, 0))) push(i, 0);
    }
    while (!q.empty()) {
        auto [i, j] = q.front();
        q.pop();
        if (horizontal && i == n - 1 && col(lat.h_edge(j, n))) return true;
        if (!horizontal && j == n - 1 && col(lat.v_edge(i, n))) return true;
        auto ve = lat.vertex_edges(i, j);
        if (i > 0 && col(ve[0])) push(i - 1, j);
        if (i + 1 < n && col(ve[1])) push(i + 1, j);
        if (j > 0 && col(ve[2])) push(i, j - 1);
        if (j + 1 < n && col(ve[3])) push(i, j + 1);
    }
    return false;
}

// A cross requires bridges in both directions.
inline bool has_cross(const Configuration& c, bool want_red) {
    return has_bridge(c, want_red, true) && has_bridge(c, want_red, false);
}

// Dual lattice.  Faces (cells of the extended grid, boundary cells included)
// are indexed fid = fi*(n+1)+fj for fi,fj in [0,n]; face (fi,fj) spans
// [fi-1,fi]x[fj-1,fj].  The two diagonal dual edges through internal vertex
// (i,j) are: NE type, joining faces (i,j)-(i+1,j+1), which separates edge
// pair {W,N} from {E,S}; and NW type, joining (i+1,j)-(i,j+1), separating
// {S,W} from {N,E}.
enum class DualEdge : std::uint8_t { None = 0, NE = 1, NW = 2 };

// L_x: for each internal vertex with two red and two green edges, the dual
// edge separating the colors.  Monochromatic (type-c) vertices give None.
inline std::vector<DualEdge> build_Lx(const Configuration& c) {
    Lattice lat(c.n);
    auto red = color_edges(c);
    std::vector<DualEdge> lx(c.n * c.n, DualEdge::None);
    for (int j = 0; j < c.n; ++j)
        for (int i = 0; i < c.n; ++i) {
            auto ve = lat.vertex_edges(i, j);
            bool w = red[ve[0]], e = red[ve[1]], s = red[ve[2]], n = red[ve[3]];
            int k = int(w) + int(e) + int(s) + int(n);
            if (k != 2) continue;
            if ((w && n) || (e && s))
                lx[j * c.n + i] = DualEdge::NE;
            else if ((w && s) || (e && n))
                lx[j * c.n + i] = DualEdge::NW;
            else
                throw InvalidConfiguration("red pair not rotationally adjacent");
        }
    return lx;
}

// A fault line or almost fault line witness: the face-id sequence of a simple
// dual path from one side of the lattice to the opposite side.  If
// wildcard_index >= 0, the dual edge between faces[wildcard_index] and
// faces[wildcard_index+1] is the single edge not in L_x.
struct FaultWitness {
    bool horizontal = false;  // horizontal: left->right; vertical: bottom->top
    std::vector<int> faces;
    int wildcard_index = -1;

    int length() const { return static_cast<int>(faces.size()) - 1; }
};

// Vertex of the lattice crossed by the dual edge between two diagonally
// adjacent faces.
inline std::pair<int, int> crossed_vertex(int n, int f1, int f2) {
    int a1 = f1 / (n + 1), b1 = f1 % (n + 1);
    int a2 = f2 / (n + 1), b2 = f2 % (n + 1);
    if (std::abs(a1 - a2) != 1 || std::abs(b1 - b2) != 1)
        throw std::invalid_argument("faces are not diagonally adjacent");
    return {std::min(a1, a2), std::min(b1, b2)};
}

namespace detail {

// Neighbors of face fid through L_x edges.
inline void lx_neighbors(int n, const std::vector<DualEdge>& lx, int fid,
                         std::vector<int>& out) {
    out.clear();
    int fi = fid / (n + 1), fj = fid % (n + 1);
    // NE-type edge through vertex (i,j) joins faces (i,j) and (i+1,j+1)
    if (fi < n && fj < n && lx[fj * n + fi] == DualEdge::NE)
        out.push_back((fi + 1) * (n + 1) + (fj + 1));
    if (fi > 0 && fj > 0 && lx[(fj - 1) * n + (fi - 1)] == DualEdge::NE)
        out.push_back((fi - 1) * (n + 1) + (fj - 1));
    // NW-type edge through vertex (i,j) joins faces (i+1,j) and (i,j+1)
    if (fi > 0 && fj < n && lx[fj * n + (fi - 1)] == DualEdge::NW)
        out.push_back((fi - 1) * (n + 1) + (fj + 1));
    if (fi < n && fj > 0 && lx[(fj - 1) * n + fi] == DualEdge::NW)
        out.push_back((fi + 1) * (n + 1) + (fj - 1));
}

inline bool is_source_face(int n, int fid, bool horizontal) {
    return horizontal ? (fid / (n + 1) == 0) : (fid % (n + 1) == 0);
}
inline bool is_target_face(int n, int fid, bool horizontal) {
    return horizontal ? (fid / (n + 1) == n) : (fid % (n + 1) == n);
}

// BFS over L_x from all source faces; fills parent (-1 untouched, -2 root).
inline std::vector<int> lx_bfs(int n, const std::vector<DualEdge>& lx,
                               bool horizontal, bool from_target) {
    int nf = (n + 1) * (n + 1);
    std::vector<int> parent(nf, -1);
    std::queue<int> q;
    for (int f = 0; f < nf; ++f)
        if (from_target ? is_target_face(n, f, horizontal)
                        : is_source_face(n, f, horizontal)) {
            parent[f] = -2;
            q.push(f);
        }
    std::vector<int> nbrs;
    while (!q.empty()) {
        int f = q.front();
        q.pop();
        lx_neighbors(n, lx, f, nbrs);
        for (int g : nbrs)
            if (parent[g] == -1) {
                parent[g] = f;
                q.push(g);
            }
    }
    return parent;
}

inline std::vector<int> unwind(const std::vector<int>& parent, int f) {
    std::vector<int> path;
    for (int cur = f; cur != -2; cur = parent[cur]) path.push_back(cur);
    return path;  // from f back to a root
}

}  // namespace detail

// Find a fault line in the given direction, if one exists.
inline std::optional<FaultWitness> find_fault_line(const Configuration& c,
                                                   bool horizontal) {
    const int n = c.n;
    auto lx = build_Lx(c);
    auto parent = detail::lx_bfs(n, lx, horizontal, false);
    int nf = (n + 1) * (n + 1);
    for (int f = 0; f < nf; ++f)
        if (parent[f] != -1 && detail::is_target_face(n, f, horizontal)) {
            auto rev = detail::unwind(parent, f);
            FaultWitness w;
            w.horizontal = horizontal;
            w.faces.assign(rev.rbegin(), rev.rend());
            if (w.faces.size() >= 2) return w;
            // single boundary face on both sides (corner face): no edge, skip
        }
    return std::nullopt;
}

inline std::optional<FaultWitness> find_fault_line(const Configuration& c) {
    if (auto w = find_fault_line(c, true)) return w;
    return find_fault_line(c, false);
}

// Find an almost fault line: a simple boundary-to-boundary dual path with
// exactly one edge outside L_x.  Only valid when the configuration has no
// fault line in this direction (which callers check first); in that case the
// source-side and target-side L_x segments can never meet, so the
// concatenation through the wildcard edge is automatically simple.
inline std::optional<FaultWitness> find_almost_fault_line(
    const Configuration& c, bool horizontal) {
    const int n = c.n;
    auto lx = build_Lx(c);
    auto ps = detail::lx_bfs(n, lx, horizontal, false);
    auto pt = detail::lx_bfs(n, lx, horizontal, true);

    auto try_edge = [&](int u, int v) -> std::optional<FaultWitness> {
        // wildcard edge u -> v with u reachable from source, v from target
        if (ps[u] == -1 || pt[v] == -1) return std::nullopt;
        auto pre = detail::unwind(ps, u);   // u .. source root
        auto suf = detail::unwind(pt, v);   // v .. target root
        FaultWitness w;
        w.horizontal = horizontal;
        w.faces.assign(pre.rbegin(), pre.rend());
        w.wildcard_index = static_cast<int>(w.faces.size()) - 1;
        w.faces.insert(w.faces.end(), suf.begin(), suf.end());
        if (w.faces.size() < 2) return std::nullopt;
        return w;
    };

    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            DualEdge have = lx[j * n + i];
            int ne_a = i * (n + 1) + j, ne_b = (i + 1) * (n + 1) + (j + 1);
            int nw_a = (i + 1) * (n + 1) + j, nw_b = i * (n + 1) + (j + 1);
            if (have != DualEdge::NE) {
                if (auto w = try_edge(ne_a, ne_b)) return w;
                if (auto w = try_edge(ne_b, ne_a)) return w;
            }
            if (have != DualEdge::NW) {
                if (auto w = try_edge(nw_a, nw_b)) return w;
                if (auto w = try_edge(nw_b, nw_a)) return w;
            }
        }
    return std::nullopt;
}

inline std::optional<FaultWitness> find_almost_fault_line(
    const Configuration& c) {
    if (auto w = find_almost_fault_line(c, true)) return w;
    return find_almost_fault_line(c, false);
}

enum class FaultClass { Red, Green, FaultLine };

inline const char* fault_class_name(FaultClass f) {
    switch (f) {
        case FaultClass::Red: return "C_R";
        case FaultClass::Green: return "C_G";
        default: return "C_FL";
    }
}

struct FaultReport {
    FaultClass cls = FaultClass::FaultLine;
    bool red_cross = false;
    bool green_cross = false;
    std::optional<FaultWitness> fault_line;
    std::optional<FaultWitness> almost_fault_line;  // searched only if no FL

    // membership in Omega_MIDDLE = C_FL v C_AFL
    bool middle() const {
        return fault_line.has_value() || almost_fault_line.has_value();
    }
};

inline FaultReport classify(const Configuration& c) {
    FaultReport r;
    r.red_cross = has_cross(c, true);
    r.green_cross = has_cross(c, false);
    r.fault_line = find_fault_line(c);
    if (r.fault_line)
        r.cls = FaultClass::FaultLine;
    else if (r.red_cross)
        r.cls = FaultClass::Red;
    else if (r.green_cross)
        r.cls = FaultClass::Green;
    else
        throw InvalidConfiguration("no cross and no fault line: partition broken");
    if (!r.fault_line) r.almost_fault_line = find_almost_fault_line(c);
    return r;
}

// SLR encoding of a witness path (turn string of the non-backtracking walk).
// First character is always 'S' by convention.
inline std::string walk_string(const FaultWitness& w, int n) {
    std::string s;
    auto dir = [&](int f1, int f2) {
        int a1 = f1 / (n + 1), b1 = f1 % (n + 1);
        int a2 = f2 / (n + 1), b2 = f2 % (n + 1);
        return std::pair<int, int>{a2 - a1, b2 - b1};
    };
    for (std::size_t k = 0; k + 1 < w.faces.size(); ++k) {
        if (k == 0) {
            s.push_back('S');
            continue;
        }
        auto d0 = dir(w.faces[k - 1], w.faces[k]);
        auto d1 = dir(w.faces[k], w.faces[k + 1]);
        if (d0 == d1) {
            s.push_back('S');
        } else {
            int cross = d0.first * d1.second - d0.second * d1.first;
            if (cross == 0)
                throw std::invalid_argument("witness path backtracks");
            s.push_back(cross > 0 ? 'L' : 'R');
        }
    }
    return s;
}

namespace detail {

// Side test in doubled coordinates: cast a ray from (px,py) toward -infinity
// along the axis perpendicular to the witness direction and count crossings
// of the extended polyline (half-open rule).  Even parity = the side that
// contains the far-negative region; that is the side we reverse.
inline bool on_flip_side(const std::vector<std::pair<long, long>>& poly,
                         long px, long py, bool horizontal) {
    // For vertical witnesses the ray goes toward x=-inf; for horizontal ones
    // toward y=-inf.  Swap coordinates so both cases read the same.
    auto coord = [&](std::pair<long, long> p) {
        return horizontal ? std::pair<long, long>{p.second, p.first} : p;
    };
    if (horizontal) std::swap(px, py);
    long crossings = 0;
    for (std::size_t k = 0; k + 1 < poly.size(); ++k) {
        auto [x1, y1] = coord(poly[k]);
        auto [x2, y2] = coord(poly[k + 1]);
        if (std::min(y1, y2) <= py && py < std::max(y1, y2)) {
            long xi = x1 + (x2 - x1) * (py - y1) / (y2 - y1);
            if (xi == px)
                throw std::logic_error("ray crossing hit an edge midpoint");
            if (xi < px) ++crossings;
        }
    }
    return crossings % 2 == 0;
}

}  // namespace detail

// Reverse all edges on one (deterministically chosen) side of the witness
// path.  The image of a valid ice configuration is again valid; validated
// here and exercised further by the weight-amplification tests.
inline Configuration peierls_map(const Configuration& c,
                                 const FaultWitness& w) {
    const int n = c.n;
    Lattice lat(n);
    // Face (fi,fj) center in doubled coordinates.
    std::vector<std::pair<long, long>> poly;
    poly.reserve(w.faces.size() + 2);
    auto center = [&](int f) {
        return std::pair<long, long>{2L * (f / (n + 1)) - 1,
                                     2L * (f % (n + 1)) - 1};
    };
    auto first = center(w.faces.front()), last = center(w.faces.back());
    if (w.horizontal) {
        poly.push_back({-5, first.second});
        for (int f : w.faces) poly.push_back(center(f));
        poly.push_back({2L * n + 3, last.second});
    } else {
        poly.push_back({first.first, -5});
        for (int f : w.faces) poly.push_back(center(f));
        poly.push_back({last.first, 2L * n + 3});
    }

    Configuration out = c;
    for (int e = 0; e < lat.num_edges(); ++e) {
        long mx, my;
        if (lat.is_horizontal(e)) {
            int j = e / (n + 1), i = e % (n + 1);
            mx = 2L * i - 1;
            my = 2L * j;
        } else {
            int r = e - n * (n + 1);
            int i = r / (n + 1), j = r % (n + 1);
            mx = 2L * i;
            my = 2L * j - 1;
        }
        if (detail::on_flip_side(poly, mx, my, w.horizontal)) out.flip(e);
    }
    if (!ice_ok(out))
        throw InvalidConfiguration("peierls map image violates ice rule");
    return out;
}

}  // namespace sixv
