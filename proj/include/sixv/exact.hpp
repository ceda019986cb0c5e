#pragma once

// Brute-force ground truth for small lattices: state enumeration (DFS with
// ice-rule pruning, plus an independent transfer-matrix counter), partition
// function, stationary distribution, transition matrix, TV distance,
// conductance, spectral gap, and exact mixing time.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "glauber.hpp"
#include "lattice.hpp"
#include "rational.hpp"
#include "weights.hpp"

namespace sixv {

struct EnumerationCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StateSpace {
    int n = 0;
    BoundaryCondition bc;
    std::vector<Configuration> states;
    std::unordered_map<Configuration, int, ConfigurationHash> index;

    int size() const { return static_cast<int>(states.size()); }
};

namespace detail {

// Lexicographic order on the edge-bit string (edge 0 first).
inline bool config_less(const Configuration& a, const Configuration& b) {
    for (std::size_t w = 0; w < a.words.size(); ++w) {
        if (a.words[w] == b.words[w]) continue;
        std::uint64_t diff = a.words[w] ^ b.words[w];
        std::uint64_t low = diff & ~(diff - 1);  // lowest differing bit
        return (b.words[w] & low) != 0;          // a has 0 there -> a < b
    }
    return false;
}

}  // namespace detail

// Enumerate all ice-rule configurations satisfying the boundary condition.
// Vertices are processed row-major with in-degree pruning; states are sorted
// lexicographically by edge bits, which fixes the canonical index.
inline StateSpace enumerate_states(int n, const BoundaryCondition& bc,
                                   std::size_t cap = 1'000'000) {
    Lattice lat(n);
    bc.validate(n);
    std::vector<signed char> bits(lat.num_edges(), -1);
    for (auto [e, b] : bc.fixed_stubs) bits[e] = b ? 1 : 0;

    StateSpace sp;
    sp.n = n;
    sp.bc = bc;

    struct Rec {
        Lattice& lat;
        std::vector<signed char>& bits;
        StateSpace& sp;
        std::size_t cap;
        int n;

        void emit() {
            if (sp.states.size() >= cap)
                throw EnumerationCapExceeded("state cap exceeded");
            Configuration c(n);
            for (int e = 0; e < lat.num_edges(); ++e)
                if (bits[e] == 1) c.set(e, true);
            sp.states.push_back(std::move(c));
        }

        void go(int k) {
            if (k == n * n) {
                emit();
                return;
            }
            int i = k % n, j = k / n;
            auto ve = lat.vertex_edges(i, j);
            // (edge, bit value that means incoming at this vertex)
            std::array<std::pair<int, int>, 4> inc = {
                std::pair<int, int>{ve[0], 1}, {ve[1], 0}, {ve[2], 1}, {ve[3], 0}};
            int unk[4], nu = 0, in_fixed = 0;
            for (auto [e, b] : inc) {
                if (bits[e] == -1)
                    unk[nu++] = e;
                else if (bits[e] == b)
                    ++in_fixed;
            }
            for (int m = 0; m < (1 << nu); ++m) {
                int in_cnt = in_fixed;
                for (int t = 0; t < nu; ++t) {
                    int bit = (m >> t) & 1;
                    bits[unk[t]] = static_cast<signed char>(bit);
                    // incoming bit is 1 for W/S, 0 for E/N
                    for (auto [e, b] : inc)
                        if (e == unk[t] && bit == b) ++in_cnt;
                }
                if (in_cnt == 2) go(k + 1);
                for (int t = 0; t < nu; ++t) bits[unk[t]] = -1;
            }
        }
    } rec{lat, bits, sp, cap, n};
    rec.go(0);

    std::sort(sp.states.begin(), sp.states.end(), detail::config_less);
    sp.index.reserve(sp.states.size() * 2);
    for (int k = 0; k < sp.size(); ++k) sp.index[sp.states[k]] = k;
    return sp;
}

// Independent state counter: transfer-matrix DP over rows.  The DP state is
// the bit vector of the n vertical edges between the current row and the
// next, scanning vertices left-to-right within a row and carrying the
// current horizontal edge bit.  Shares no code with enumerate_states.
inline unsigned long long count_states_transfer(int n,
                                                const BoundaryCondition& bc) {
    Lattice lat(n);
    bc.validate(n);
    std::vector<signed char> fixed(lat.num_edges(), -1);
    for (auto [e, b] : bc.fixed_stubs) fixed[e] = b ? 1 : 0;

    auto choices = [&](int e) {
        return fixed[e] == -1 ? std::vector<int>{0, 1}
                              : std::vector<int>{fixed[e]};
    };

    // counts indexed by the bit vector of vertical edges entering row j,
    // initialized over the admissible bottom-stub assignments
    std::vector<unsigned long long> cur(std::size_t(1) << n, 0);
    for (unsigned long long s = 0; s < (1ull << n); ++s) {
        bool ok = true;
        for (int i = 0; i < n; ++i) {
            int f = fixed[lat.v_edge(i, 0)];
            if (f != -1 && f != int((s >> i) & 1)) ok = false;
        }
        cur[s] = ok ? 1 : 0;
    }
    for (int j = 0; j < n; ++j) {
        std::vector<unsigned long long> next(std::size_t(1) << n, 0);
        for (unsigned long long s = 0; s < (1ull << n); ++s) {
            if (cur[s] == 0) continue;
            // scan the row: state (i, horizontal bit, top bits so far)
            struct Item {
                int i;
                int hbit;
                unsigned long long top;
            };
            std::vector<Item> stack;
            for (int h0 : choices(lat.h_edge(j, 0)))
                stack.push_back({0, h0, 0});
            while (!stack.empty()) {
                auto [i, hbit, top] = stack.back();
                stack.pop_back();
                if (i == n) {
                    next[top] += cur[s];
                    continue;
                }
                int sbit = int((s >> i) & 1);
                for (int ebit : choices(lat.h_edge(j, i + 1)))
                    for (int nbit : choices(lat.v_edge(i, j + 1))) {
                        // in-degree: W in iff hbit==1, E in iff ebit==0,
                        // S in iff sbit==1, N in iff nbit==0
                        int ind = (hbit == 1) + (ebit == 0) + (sbit == 1) +
                                  (nbit == 0);
                        if (ind != 2) continue;
                        stack.push_back(
                            {i + 1, ebit,
                             top | (static_cast<unsigned long long>(nbit) << i)});
                    }
            }
        }
        cur.swap(next);
    }
    unsigned long long total = 0;
    for (unsigned long long s = 0; s < (1ull << n); ++s) {
        bool ok = true;
        for (int i = 0; i < n; ++i) {
            int f = fixed[lat.v_edge(i, n)];
            if (f != -1 && f != int((s >> i) & 1)) ok = false;
        }
        if (ok) total += cur[s];
    }
    return total;
}

template <typename Real>
Real partition_function(const StateSpace& sp, Real a, Real b, Real c) {
    Real z = 0;
    for (const auto& x : sp.states) z += config_weight<Real>(x, a, b, c);
    return z;
}

template <typename Real>
std::vector<Real> stationary(const StateSpace& sp, Real a, Real b, Real c) {
    std::vector<Real> pi(sp.size());
    Real z = 0;
    for (int k = 0; k < sp.size(); ++k) {
        pi[k] = config_weight<Real>(sp.states[k], a, b, c);
        z += pi[k];
    }
    for (auto& p : pi) p /= z;
    return pi;
}

// Sparse Metropolis transition matrix over an enumerated space.
template <typename Real>
struct Transition {
    std::vector<std::vector<std::pair<int, Real>>> rows;  // off-diagonal
    std::vector<Real> diag;

    int size() const { return static_cast<int>(diag.size()); }
};

// laziness L gives P_L = (1-L) P + L I; L = 1/2 makes the chain aperiodic
// with nonnegative spectrum.
template <typename Real>
Transition<Real> transition_matrix(const StateSpace& sp, Real a, Real b,
                                   Real c, MoveSet ms, Real laziness = 0) {
    Lattice lat(sp.n);
    auto moves = face_moves(sp.n, ms);
    const Real m = static_cast<Real>(moves.size());
    Transition<Real> tr;
    tr.rows.resize(sp.size());
    tr.diag.assign(sp.size(), Real(0));
    for (int x = 0; x < sp.size(); ++x) {
        Real out = 0;
        for (const auto& f : moves) {
            if (!move_valid(sp.states[x], f)) continue;
            Configuration y = sp.states[x];
            apply_move(y, f);
            if (!sp.bc.satisfied_by(y)) continue;
            auto it = sp.index.find(y);
            if (it == sp.index.end())
                throw std::logic_error("move left the enumerated space");
            Real r = move_weight_ratio<Real>(sp.states[x], f, lat, a, b, c);
            Real acc = r < Real(1) ? r : Real(1);
            Real p = (Real(1) - laziness) * acc / m;
            tr.rows[x].emplace_back(it->second, p);
            out += p;
        }
        tr.diag[x] = Real(1) - out;
    }
    return tr;
}

// pi(x) P(x,y) == pi(y) P(y,x) for all pairs; exact when Real = Rational.
template <typename Real>
bool detailed_balance_ok(const Transition<Real>& tr,
                         const std::vector<Real>& pi) {
    for (int x = 0; x < tr.size(); ++x)
        for (auto [y, p] : tr.rows[x]) {
            Real back = 0;
            for (auto [z, q] : tr.rows[y])
                if (z == x) back = q;
            if (pi[x] * p != pi[y] * back) return false;
        }
    return true;
}

template <typename Real>
Real tv_distance(const std::vector<Real>& mu, const std::vector<Real>& nu) {
    if (mu.size() != nu.size())
        throw std::invalid_argument("distributions of different size");
    Real s = 0;
    for (std::size_t k = 0; k < mu.size(); ++k)
        s += mu[k] >= nu[k] ? mu[k] - nu[k] : nu[k] - mu[k];
    return s / 2;
}

inline Eigen::MatrixXd to_dense(const Transition<double>& tr) {
    int m = tr.size();
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(m, m);
    for (int x = 0; x < m; ++x) {
        P(x, x) = tr.diag[x];
        for (auto [y, p] : tr.rows[x]) P(x, y) += p;
    }
    return P;
}

// Worst-start TV distance d(t) for a dense power P^t.
inline double worst_tv(const Eigen::MatrixXd& Pt,
                       const std::vector<double>& pi) {
    double worst = 0;
    for (int x = 0; x < Pt.rows(); ++x) {
        double s = 0;
        for (int y = 0; y < Pt.cols(); ++y) s += std::abs(Pt(x, y) - pi[y]);
        worst = std::max(worst, s / 2);
    }
    return worst;
}

// Exact mixing time tau(eps) = min { t : d(t) <= eps }, computed by repeated
// squaring followed by binary search (d is non-increasing).
inline std::uint64_t mixing_time(const Eigen::MatrixXd& P,
                                 const std::vector<double>& pi,
                                 double eps = 0.25,
                                 std::uint64_t t_cap = (1ull << 40)) {
    if (worst_tv(P, pi) <= eps) return 1;
    std::vector<Eigen::MatrixXd> sq = {P};  // sq[k] = P^(2^k)
    std::uint64_t t = 1;
    while (true) {
        Eigen::MatrixXd nxt = sq.back() * sq.back();
        sq.push_back(nxt);
        t *= 2;
        if (t > t_cap) throw std::runtime_error("mixing time exceeds cap");
        if (worst_tv(nxt, pi) <= eps) break;
    }
    // d(t/2) > eps, d(t) <= eps: binary search
    std::uint64_t lo = t / 2, hi = t;  // d(lo) > eps, d(hi) <= eps
    auto power = [&](std::uint64_t e) {
        Eigen::MatrixXd r;
        bool have = false;
        for (std::size_t k = 0; k < sq.size(); ++k)
            if ((e >> k) & 1) {
                r = have ? Eigen::MatrixXd(r * sq[k]) : sq[k];
                have = true;
            }
        return r;
    };
    while (hi - lo > 1) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (worst_tv(power(mid), pi) <= eps)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

// Spectral gap of a reversible chain via the symmetrization
// S = D^{1/2} P D^{-1/2}.
inline double spectral_gap(const Eigen::MatrixXd& P,
                           const std::vector<double>& pi) {
    int m = P.rows();
    Eigen::MatrixXd S(m, m);
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            S(x, y) = std::sqrt(pi[x] / pi[y]) * P(x, y);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        (S + S.transpose()) / 2.0);
    const auto& ev = es.eigenvalues();
    return 1.0 - ev(m - 2);  // second largest
}

// Conductance Phi(S) = sum_{x in S, y notin S} pi(x) P(x,y) / pi(S).
template <typename Real>
Real conductance(const Transition<Real>& tr, const std::vector<Real>& pi,
                 const std::vector<std::uint8_t>& in_s) {
    Real flow = 0, mass = 0;
    for (int x = 0; x < tr.size(); ++x) {
        if (!in_s[x]) continue;
        mass += pi[x];
        for (auto [y, p] : tr.rows[x])
            if (!in_s[y]) flow += pi[x] * p;
    }
    if (mass == Real(0)) throw std::invalid_argument("empty set S");
    return flow / mass;
}

// Exhaustive Phi* = min over nonempty S with pi(S) <= 1/2, via gray-code
// subset sweep.  Feasible for |Omega| <= ~20.
inline double min_conductance_exhaustive(const Transition<double>& tr,
                                         const std::vector<double>& pi) {
    int m = tr.size();
    if (m > 24) throw std::invalid_argument("state space too large for 2^N sweep");
    Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(m, m);  // flow pi(x)P(x,y)
    for (int x = 0; x < m; ++x)
        for (auto [y, p] : tr.rows[x]) Q(x, y) += pi[x] * p;
    std::vector<std::uint8_t> in_s(m, 0);
    double flow = 0, mass = 0, best = std::numeric_limits<double>::infinity();
    std::uint32_t gray = 0;
    std::uint64_t total = 1ull << m;
    for (std::uint64_t k = 1; k < total; ++k) {
        std::uint32_t g = static_cast<std::uint32_t>(k ^ (k >> 1));
        int bit = std::countr_zero(gray ^ g);
        bool adding = ((g >> bit) & 1) != 0;
        if (adding) {
            // bit joins S: bit->outside edges start crossing, S->bit stop
            for (int y = 0; y < m; ++y) {
                if (y == bit) continue;
                if (in_s[y])
                    flow -= Q(y, bit);
                else
                    flow += Q(bit, y);
            }
            mass += pi[bit];
            in_s[bit] = 1;
        } else {
            // bit leaves S: bit->outside edges stop crossing, S->bit start
            in_s[bit] = 0;
            for (int y = 0; y < m; ++y) {
                if (y == bit) continue;
                if (in_s[y])
                    flow += Q(y, bit);
                else
                    flow -= Q(bit, y);
            }
            mass -= pi[bit];
        }
        gray = g;
        if (mass > 0.5 + 1e-15 || mass <= 0) continue;
        best = std::min(best, flow / mass);
    }
    return best;
}

// TV(P^t(x0, .), pi) by sparse forward evolution: a certified lower-bound
// witness for the mixing time (d(t) >= this value).
template <typename Real>
Real tv_from_start(const Transition<Real>& tr, const std::vector<Real>& pi,
                   int x0, std::uint64_t t) {
    std::vector<Real> cur(tr.size(), Real(0)), nxt(tr.size());
    cur[x0] = 1;
    for (std::uint64_t s = 0; s < t; ++s) {
        for (int x = 0; x < tr.size(); ++x) nxt[x] = cur[x] * tr.diag[x];
        for (int x = 0; x < tr.size(); ++x) {
            if (cur[x] == Real(0)) continue;
            for (auto [y, p] : tr.rows[x]) nxt[y] += cur[x] * p;
        }
        cur.swap(nxt);
    }
    return tv_distance(cur, pi);
}

// Connectivity of the move graph over an enumerated space (union-find).
inline bool connected_under_moves(const StateSpace& sp, MoveSet ms) {
    auto moves = face_moves(sp.n, ms);
    std::vector<int> parent(sp.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (int x = 0; x < sp.size(); ++x)
        for (const auto& f : moves) {
            if (!move_valid(sp.states[x], f)) continue;
            Configuration y = sp.states[x];
            apply_move(y, f);
            if (!sp.bc.satisfied_by(y)) continue;
            auto it = sp.index.find(y);
            if (it == sp.index.end()) continue;
            parent[find(x)] = find(it->second);
        }
    int root = find(0);
    for (int x = 1; x < sp.size(); ++x)
        if (find(x) != root) return false;
    return true;
}

}  // namespace sixv
