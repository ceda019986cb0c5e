#pragma once

// Lattice-path view of a configuration: kept edges (those directed N or E)
// decompose into edge-disjoint NE paths that may touch at crossing vertices.
// Crossings are resolved osculating (W->N, S->E), so strands never cross:
// the k-th entry stub always connects to the k-th exit stub, which keeps the
// per-path deviation observable well defined.

#include <stdexcept>
#include <vector>

#include "lattice.hpp"

namespace sixv {

// A single NE lattice path, stored as the ordered list of kept edge ids it
// traverses, starting and ending at boundary stubs.
struct LatticePath {
    std::vector<int> edges;

    int length() const { return static_cast<int>(edges.size()); }
};

struct PathSystem {
    int n = 0;
    std::vector<LatticePath> paths;
};

// Interior vertex sequence of a path (the lattice vertices it visits, in
// order).  A path with k edges visits k-1 vertices: every edge but the last
// leads into a vertex.
inline std::vector<std::pair<int, int>> path_vertices(const Lattice& lat,
                                                      const LatticePath& p) {
    std::vector<std::pair<int, int>> out;
    for (std::size_t s = 0; s + 1 < p.edges.size(); ++s) {
        int e = p.edges[s];
        // head vertex of a kept (E- or N-directed) edge is (i, j)
        if (lat.is_horizontal(e)) {
            out.emplace_back(e % (lat.n + 1), e / (lat.n + 1));
        } else {
            int r = e - lat.n * (lat.n + 1);
            out.emplace_back(r / (lat.n + 1), r % (lat.n + 1));
        }
    }
    return out;
}

// Step directions of a path: 'E' for a horizontal edge, 'N' for a vertical
// one.  Includes the entry and exit stubs.
inline std::vector<char> path_steps(const Lattice& lat, const LatticePath& p) {
    std::vector<char> out;
    out.reserve(p.edges.size());
    for (int e : p.edges) out.push_back(lat.is_horizontal(e) ? 'E' : 'N');
    return out;
}

// Decompose the kept edges of an ice-rule configuration into NE paths.
// Paths are emitted in order of their entry stub: west stubs bottom-to-top,
// then south stubs left-to-right.
inline PathSystem to_paths(const Configuration& c) {
    Lattice lat(c.n);
    const int n = c.n;
    PathSystem ps;
    ps.n = n;

    auto trace = [&](int entry_edge) {
        LatticePath p;
        int e = entry_edge;
        // current vertex reached by edge e
        while (true) {
            p.edges.push_back(e);
            int i, j;
            bool horiz = lat.is_horizontal(e);
            if (horiz) {
                j = e / (n + 1);
                i = e % (n + 1);
                if (i == n) break;  // exited through an east stub
            } else {
                int r = e - n * (n + 1);
                i = r / (n + 1);
                j = r % (n + 1);
                if (j == n) break;  // exited through a north stub
            }
            // at internal vertex (i, j); choose outgoing kept edge
            auto ve = lat.vertex_edges(i, j);
            bool in_w = horiz;  // arrived going E (from W side) or N (from S)
            bool out_e = c.kept(ve[1]);
            bool out_n = c.kept(ve[3]);
            if (out_e && out_n) {
                // crossing, osculating resolution: W->N, S->E
                e = in_w ? ve[3] : ve[1];
            } else if (out_e) {
                e = ve[1];
            } else if (out_n) {
                e = ve[3];
            } else {
                throw InvalidConfiguration("path dead-ends at internal vertex");
            }
        }
        return p;
    };

    for (int j = 0; j < n; ++j)
        if (c.kept(lat.h_edge(j, 0))) ps.paths.push_back(trace(lat.h_edge(j, 0)));
    for (int i = 0; i < n; ++i)
        if (c.kept(lat.v_edge(i, 0))) ps.paths.push_back(trace(lat.v_edge(i, 0)));
    return ps;
}

// Rebuild a configuration from a path system: exactly the path edges are
// kept.  Throws if the result violates the ice rule or paths reuse an edge.
inline Configuration from_paths(const PathSystem& ps) {
    Configuration c(ps.n);
    Lattice lat(ps.n);
    for (const auto& p : ps.paths)
        for (int e : p.edges) {
            if (c.kept(e)) throw InvalidConfiguration("paths reuse an edge");
            c.set(e, true);
        }
    if (!ice_ok(c)) throw InvalidConfiguration("path system breaks the ice rule");
    return c;
}

// Number of pairwise intersections (shared vertices) between distinct paths.
inline long long path_intersections(const Configuration& c) {
    Lattice lat(c.n);
    long long k = 0;
    for (int j = 0; j < c.n; ++j)
        for (int i = 0; i < c.n; ++i)
            if (classify_vertex(c, i, j) == VertexType::A1) ++k;
    return k;
}

// Max L1 deviation of a square path from its own diagonal: with steps
// s_1..s_2k (N=+1, E=-1) over the span between the given step indices
// [first, last), this is max_t |s_1 + ... + s_t|.
inline int path_deviation(const std::vector<char>& steps, std::size_t first,
                          std::size_t last) {
    int s = 0, dev = 0;
    for (std::size_t t = first; t < last; ++t) {
        s += (steps[t] == 'N') ? 1 : -1;
        dev = std::max(dev, std::abs(s));
    }
    return dev;
}

// Max interior deviation over all paths of a configuration (stubs excluded).
inline int max_interior_deviation(const Configuration& c) {
    Lattice lat(c.n);
    int dev = 0;
    for (const auto& p : to_paths(c).paths) {
        auto steps = path_steps(lat, p);
        if (steps.size() >= 2)
            dev = std::max(dev, path_deviation(steps, 1, steps.size() - 1));
    }
    return dev;
}

}  // namespace sixv
