#pragma once

// Independent-paths boundary condition for the ferroelectric slowdown: a
// diagonal path gamma_0 from (0,0) to (n,n) plus ell satellite paths on each
// side at spacing d, and the cut event S = "every path stays within theta of
// its own diagonal".

#include <cmath>
#include <stdexcept>
#include <vector>

#include "lattice.hpp"
#include "paths.hpp"

namespace sixv {

// Terminals live on the (n+1)x(n+1) vertex grid, i.e. Lattice(n+1).
struct IndependentPathsSpec {
    int n = 0;
    int ell = 0;
    int d = 1;

    int side() const { return n + 1; }
    int num_paths() const { return 2 * ell + 1; }

    static int default_ell(int n) {
        return static_cast<int>(std::floor(std::pow(double(n), 1.0 / 8)));
    }
    static int default_d(int n) {
        return static_cast<int>(std::floor(32 * std::pow(double(n), 0.75)));
    }

    void validate() const {
        if (n < 1 || ell < 0 || d < 1)
            throw std::invalid_argument("bad independent-paths parameters");
        if (ell * d >= n)
            throw std::invalid_argument("satellite terminals leave the grid");
    }
};

// All stubs are forced: gamma_0 runs west-in at (0,0) to east-out at (n,n);
// below-diagonal path k enters from the south at (kd,0) and exits east at
// (n, n-kd); the above-diagonal paths are the mirror images.
inline BoundaryCondition independent_paths_boundary(
    const IndependentPathsSpec& sp) {
    sp.validate();
    const int L = sp.side();
    Lattice lat(L);
    std::vector<std::pair<int, bool>> stubs;
    for (int e : lat.stub_edges()) stubs.emplace_back(e, false);
    auto force = [&](int e) {
        for (auto& [ee, b] : stubs)
            if (ee == e) b = true;
    };
    force(lat.h_edge(0, 0));
    force(lat.h_edge(sp.n, L));
    for (int k = 1; k <= sp.ell; ++k) {
        force(lat.v_edge(k * sp.d, 0));       // below, in
        force(lat.h_edge(sp.n - k * sp.d, L));  // below, out
        force(lat.h_edge(k * sp.d, 0));       // above, in
        force(lat.v_edge(sp.n - k * sp.d, L));  // above, out
    }
    auto bc = BoundaryCondition::explicit_stubs(std::move(stubs),
                                                "independent-paths");
    bc.validate(L);
    return bc;
}

// A valid start state: every path is the tight staircase along its own
// diagonal.  Adjacent staircases may share vertices (crossings) but never
// edges, so the result satisfies the ice rule.
inline Configuration canonical_start(const IndependentPathsSpec& sp) {
    sp.validate();
    const int L = sp.side();
    Lattice lat(L);
    Configuration c(L);
    // staircase (N,E)-repeated from (i0,j0), entered via `in_stub`
    auto lay = [&](int i0, int j0, int reps, int in_stub, int out_stub) {
        c.set(in_stub, true);
        int i = i0, j = j0;
        for (int t = 0; t < reps; ++t) {
            c.set(lat.v_edge(i, j + 1), true);  // N
            c.set(lat.h_edge(j + 1, i + 1), true);  // E
            ++i;
            ++j;
        }
        c.set(out_stub, true);
    };
    lay(0, 0, sp.n, lat.h_edge(0, 0), lat.h_edge(sp.n, L));
    for (int k = 1; k <= sp.ell; ++k) {
        int kd = k * sp.d;
        lay(kd, 0, sp.n - kd, lat.v_edge(kd, 0), lat.h_edge(sp.n - kd, L));
        lay(0, kd, sp.n - kd, lat.h_edge(kd, 0), lat.v_edge(sp.n - kd, L));
    }
    if (!ice_ok(c)) throw InvalidConfiguration("staircase start is invalid");
    return c;
}

// Cut event: every path deviates from its diagonal by less than theta.
inline bool in_cut_S(const Configuration& c, int theta) {
    return max_interior_deviation(c) < theta;
}

}  // namespace sixv
