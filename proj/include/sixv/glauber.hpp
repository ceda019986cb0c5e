#pragma once

// Glauber dynamics with Metropolis acceptance.  A move reverses the edges
// bounding one face of the extended grid.  Interior cells are the classic
// 4-edge moves; with free boundary conditions the 3- and 2-edge boundary
// faces are needed as well, since interior moves alone never change a stub.

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "faultline.hpp"
#include "lattice.hpp"
#include "paths.hpp"
#include "rng.hpp"
#include "weights.hpp"

namespace sixv {

enum class MoveSet { CellsOnly, AllFaces };

// One flippable face: its bounding edges and, per internal corner vertex,
// the two face edges meeting there (with their incoming-at-that-vertex bit).
struct FaceMove {
    struct VertexPair {
        int i, j;
        int e1, e2;           // face edges meeting at (i,j)
        bool in1_bit, in2_bit;  // edge bit value meaning "incoming at (i,j)"
    };
    std::array<int, 4> edges{};
    int n_edges = 0;
    std::array<VertexPair, 4> verts{};
    int num_verts = 0;
};

// Enumerate the faces of the move set.  Face (fi,fj), fi,fj in [0,n], spans
// [fi-1,fi]x[fj-1,fj] in vertex coordinates; CellsOnly keeps the interior
// cells fi,fj in [1,n-1].
inline std::vector<FaceMove> face_moves(int n, MoveSet ms) {
    Lattice lat(n);
    std::vector<FaceMove> out;
    int lo = (ms == MoveSet::CellsOnly) ? 1 : 0;
    int hi = (ms == MoveSet::CellsOnly) ? n - 1 : n;
    for (int fi = lo; fi <= hi; ++fi)
        for (int fj = lo; fj <= hi; ++fj) {
            FaceMove f;
            auto add_edge = [&](int e) { f.edges[f.n_edges++] = e; };
            if (fj >= 1) add_edge(lat.h_edge(fj - 1, fi));  // bottom
            if (fj <= n - 1) add_edge(lat.h_edge(fj, fi));  // top
            if (fi >= 1) add_edge(lat.v_edge(fi - 1, fj));  // west
            if (fi <= n - 1) add_edge(lat.v_edge(fi, fj));  // east
            // group edges by internal corner vertex
            for (int i = fi - 1; i <= fi; ++i)
                for (int j = fj - 1; j <= fj; ++j) {
                    if (i < 0 || i >= n || j < 0 || j >= n) continue;
                    auto ve = lat.vertex_edges(i, j);
                    // incoming bit: W edge in iff 1, E iff 0, S iff 1, N iff 0
                    std::array<std::pair<int, bool>, 4> inc = {
                        std::pair<int, bool>{ve[0], true},
                        {ve[1], false},
                        {ve[2], true},
                        {ve[3], false}};
                    FaceMove::VertexPair vp{i, j, -1, -1, false, false};
                    int k = 0;
                    for (auto [e, b] : inc)
                        for (int t = 0; t < f.n_edges; ++t)
                            if (f.edges[t] == e) {
                                if (k == 0) {
                                    vp.e1 = e;
                                    vp.in1_bit = b;
                                } else {
                                    vp.e2 = e;
                                    vp.in2_bit = b;
                                }
                                ++k;
                            }
                    if (k == 0) continue;
                    if (k != 2)
                        throw std::logic_error("face edge grouping broken");
                    f.verts[f.num_verts++] = vp;
                }
            if (f.n_edges > 0) out.push_back(f);
        }
    return out;
}

// A face flip is valid iff at every incident internal vertex one of its two
// face edges points in and the other out; then reversing both preserves the
// ice rule (interior cells: the four edges are oriented cyclically).
inline bool move_valid(const Configuration& c, const FaceMove& f) {
    for (int k = 0; k < f.num_verts; ++k) {
        const auto& vp = f.verts[k];
        bool in1 = (c.kept(vp.e1) == vp.in1_bit);
        bool in2 = (c.kept(vp.e2) == vp.in2_bit);
        if (in1 == in2) return false;
    }
    return true;
}

inline void apply_move(Configuration& c, const FaceMove& f) {
    for (int k = 0; k < f.n_edges; ++k) c.flip(f.edges[k]);
}

// Metropolis ratio w(y)/w(x) for the flip, from the affected vertices only.
template <typename Real>
Real move_weight_ratio(const Configuration& c, const FaceMove& f,
                       const Lattice& lat, Real a, Real b, Real cc) {
    std::vector<std::pair<int, int>> vs;
    vs.reserve(f.num_verts);
    for (int k = 0; k < f.num_verts; ++k)
        vs.emplace_back(f.verts[k].i, f.verts[k].j);
    Real before = local_weight<Real>(c, vs, a, b, cc);
    Configuration y = c;
    apply_move(y, f);
    Real after = local_weight<Real>(y, vs, a, b, cc);
    return after / before;
}

struct GlauberChain {
    Lattice lat;
    Weights w;
    MoveSet move_set;
    std::vector<FaceMove> moves;
    Configuration x;
    Rng rng;
    std::uint64_t steps_done = 0;
    std::uint64_t accepted = 0;

    GlauberChain(Configuration start, Weights weights, MoveSet ms,
                 std::uint64_t seed, std::uint64_t stream = 0)
        : lat(start.n),
          w(weights),
          move_set(ms),
          moves(face_moves(start.n, ms)),
          x(std::move(start)),
          rng(seed, stream) {
        if (!ice_ok(x)) throw InvalidConfiguration("invalid start state");
    }

    // One step of the chain: pick a face uniformly; if flippable, accept the
    // flip with probability min(1, w(y)/w(x)).  Returns true if x changed.
    bool step() {
        ++steps_done;
        const FaceMove& f = moves[rng.next_below(moves.size())];
        if (!move_valid(x, f)) return false;
        double r = move_weight_ratio<double>(x, f, lat, w.a, w.b, w.c);
        if (r < 1.0 && !rng.bernoulli(r)) return false;
        apply_move(x, f);
        ++accepted;
        return true;
    }
};

// --- observables ---------------------------------------------------------

// Named observables evaluated on a configuration.  "in_S:<theta>" tests the
// ferroelectric cut event: every path deviates from its diagonal by < theta.
inline double eval_observable(const std::string& name,
                              const Configuration& c) {
    static const std::map<std::string, int> type_idx = {
        {"n1", 0}, {"n2", 1}, {"n3", 2}, {"n4", 3}, {"n5", 4}, {"n6", 5}};
    if (auto it = type_idx.find(name); it != type_idx.end())
        return static_cast<double>(type_counts(c)[it->second]);
    if (name == "red_fraction") {
        auto red = color_edges(c);
        long k = 0;
        for (auto r : red) k += r;
        return static_cast<double>(k) / red.size();
    }
    if (name == "kept_fraction") {
        Lattice lat(c.n);
        long k = 0;
        for (int e = 0; e < lat.num_edges(); ++e) k += c.kept(e);
        return static_cast<double>(k) / lat.num_edges();
    }
    if (name == "red_cross" || name == "in_CR")
        return has_cross(c, true) ? 1.0 : 0.0;
    if (name == "green_cross" || name == "in_CG")
        return has_cross(c, false) ? 1.0 : 0.0;
    if (name == "fault_line")
        return find_fault_line(c) ? 1.0 : 0.0;
    if (name == "intersections")
        return static_cast<double>(path_intersections(c));
    if (name == "max_deviation" || name.rfind("in_S:", 0) == 0) {
        int dev = max_interior_deviation(c);
        if (name == "max_deviation") return static_cast<double>(dev);
        double theta = std::stod(name.substr(5));
        return dev < theta ? 1.0 : 0.0;
    }
    throw std::invalid_argument("unknown observable: " + name);
}

struct TrajectoryRecord {
    std::uint64_t step;
    std::vector<double> values;
};

struct Trajectory {
    std::vector<std::string> names;
    std::vector<TrajectoryRecord> records;
};

// Run the chain for `steps` steps, recording the observables every
// `record_every` steps (and at step 0).
inline Trajectory run_chain(GlauberChain& chain, std::uint64_t steps,
                            std::uint64_t record_every,
                            std::vector<std::string> observables) {
    if (record_every == 0) throw std::invalid_argument("record_every == 0");
    Trajectory tr;
    tr.names = std::move(observables);
    auto record = [&](std::uint64_t s) {
        TrajectoryRecord r;
        r.step = s;
        for (const auto& nm : tr.names)
            r.values.push_back(eval_observable(nm, chain.x));
        tr.records.push_back(std::move(r));
    };
    record(0);
    for (std::uint64_t s = 1; s <= steps; ++s) {
        chain.step();
        if (s % record_every == 0 || s == steps) record(s);
    }
    return tr;
}

}  // namespace sixv
