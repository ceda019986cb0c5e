#include <doctest.h>

#include <sixv/exact.hpp>
#include <sixv/glauber.hpp>

using namespace sixv;

TEST_CASE("face move enumeration counts") {
    CHECK(face_moves(2, MoveSet::CellsOnly).size() == 1);
    CHECK(face_moves(2, MoveSet::AllFaces).size() == 9);
    CHECK(face_moves(3, MoveSet::CellsOnly).size() == 4);
    CHECK(face_moves(3, MoveSet::AllFaces).size() == 16);
    for (const auto& f : face_moves(3, MoveSet::AllFaces)) {
        CHECK(f.n_edges >= 2);
        CHECK(f.n_edges <= 4);
        // interior cell: 4 corners; boundary face: 2; corner face: 1
        int want = f.n_edges == 4 ? 4 : (f.n_edges == 3 ? 2 : 1);
        CHECK(f.num_verts == want);
    }
}

TEST_CASE("valid moves are ice-preserving involutions") {
    for (int n : {2, 3}) {
        auto bc = BoundaryCondition::free_boundary();
        auto sp = enumerate_states(n, bc);
        auto moves = face_moves(n, MoveSet::AllFaces);
        for (const auto& x : sp.states)
            for (const auto& f : moves) {
                if (!move_valid(x, f)) continue;
                Configuration y = x;
                apply_move(y, f);
                CHECK(ice_ok(y));
                CHECK(move_valid(y, f));
                apply_move(y, f);
                CHECK(y == x);
            }
    }
}

TEST_CASE("interior moves never touch stubs, boundary moves do") {
    int n = 3;
    Lattice lat(n);
    std::vector<bool> is_stub(lat.num_edges(), false);
    for (int e : lat.stub_edges()) is_stub[e] = true;
    for (const auto& f : face_moves(n, MoveSet::CellsOnly))
        for (int k = 0; k < f.n_edges; ++k) CHECK_FALSE(is_stub[f.edges[k]]);
    bool some_stub = false;
    for (const auto& f : face_moves(n, MoveSet::AllFaces))
        for (int k = 0; k < f.n_edges; ++k) some_stub |= is_stub[f.edges[k]];
    CHECK(some_stub);
}

TEST_CASE("move weight ratio equals global weight ratio") {
    int n = 3;
    Lattice lat(n);
    auto sp = enumerate_states(n, BoundaryCondition::free_boundary());
    auto moves = face_moves(n, MoveSet::AllFaces);
    Rational a(2), b(3), c(5);
    int checked = 0;
    for (int k = 0; k < sp.size(); k += 97)
        for (const auto& f : moves) {
            const auto& x = sp.states[k];
            if (!move_valid(x, f)) continue;
            Configuration y = x;
            apply_move(y, f);
            Rational lhs = move_weight_ratio<Rational>(x, f, lat, a, b, c);
            CHECK(lhs == config_weight<Rational>(y, a, b, c) /
                             config_weight<Rational>(x, a, b, c));
            ++checked;
        }
    CHECK(checked > 50);
}

TEST_CASE("transition matrix: stochastic and in exact detailed balance") {
    struct Case {
        int n;
        BoundaryCondition bc;
        MoveSet ms;
    };
    std::vector<Case> cases = {
        {2, BoundaryCondition::free_boundary(), MoveSet::AllFaces},
        {3, BoundaryCondition::free_boundary(), MoveSet::AllFaces},
        {3, BoundaryCondition::domain_wall(3), MoveSet::CellsOnly},
    };
    std::vector<std::array<Rational, 3>> weights = {
        {Rational(1), Rational(1), Rational(2)},
        {Rational(3), Rational(1), Rational(1)},
        {Rational(1), Rational(3), Rational(5)},
    };
    for (const auto& cs : cases) {
        auto sp = enumerate_states(cs.n, cs.bc);
        for (auto [a, b, c] : weights) {
            auto pi = stationary<Rational>(sp, a, b, c);
            auto tr = transition_matrix<Rational>(sp, a, b, c, cs.ms);
            for (int x = 0; x < tr.size(); ++x) {
                Rational row = tr.diag[x];
                for (auto [y, p] : tr.rows[x]) row += p;
                CHECK(row == Rational(1));
            }
            CHECK(detailed_balance_ok(tr, pi));
        }
    }
}

TEST_CASE("ergodicity: interior moves suffice for DW, not for free boundary") {
    for (int n : {2, 3}) {
        auto dw = enumerate_states(n, BoundaryCondition::domain_wall(n));
        CHECK(connected_under_moves(dw, MoveSet::CellsOnly));
        auto fr = enumerate_states(n, BoundaryCondition::free_boundary());
        CHECK_FALSE(connected_under_moves(fr, MoveSet::CellsOnly));
        CHECK(connected_under_moves(fr, MoveSet::AllFaces));
    }
}

TEST_CASE("two-state DW chain: gap, mixing time, conductance") {
    auto sp = enumerate_states(2, BoundaryCondition::domain_wall(2));
    REQUIRE(sp.size() == 2);
    auto pi = stationary<double>(sp, 1.0, 1.0, 1.0);
    auto tr = transition_matrix<double>(sp, 1.0, 1.0, 1.0, MoveSet::AllFaces,
                                        0.5);
    // only the center cell flips; 9 faces, acceptance 1, laziness 1/2
    auto P = to_dense(tr);
    CHECK(P(0, 1) == doctest::Approx(1.0 / 18));
    CHECK(P(1, 0) == doctest::Approx(1.0 / 18));
    CHECK(spectral_gap(P, pi) == doctest::Approx(1.0 / 9));
    // d(t) = (1/2)(8/9)^t for the symmetric two-state chain
    CHECK(mixing_time(P, pi, 0.25) == 6);
    CHECK(min_conductance_exhaustive(tr, pi) == doctest::Approx(1.0 / 18));
    // Theorem bound tau(1/4) >= 1/(4 Phi*)
    CHECK(double(mixing_time(P, pi, 0.25)) >= 1.0 / (4 * (1.0 / 18)));
}

TEST_CASE("tv_from_start matches the dense power") {
    auto sp = enumerate_states(3, BoundaryCondition::domain_wall(3));
    REQUIRE(sp.size() == 7);
    auto pi = stationary<double>(sp, 1.0, 2.0, 3.0);
    auto tr =
        transition_matrix<double>(sp, 1.0, 2.0, 3.0, MoveSet::CellsOnly, 0.5);
    auto P = to_dense(tr);
    Eigen::MatrixXd Pt = Eigen::MatrixXd::Identity(7, 7);
    for (std::uint64_t t : {1, 5, 20}) {
        Eigen::MatrixXd Q = P;
        for (std::uint64_t s = 1; s < t; ++s) Q = Q * P;
        for (int x0 = 0; x0 < 7; ++x0) {
            double s = 0;
            for (int y = 0; y < 7; ++y) s += std::abs(Q(x0, y) - pi[y]);
            CHECK(tv_from_start(tr, pi, x0, t) == doctest::Approx(s / 2));
        }
    }
}

TEST_CASE("uniform weights sample uniformly (free n=2)") {
    auto sp = enumerate_states(2, BoundaryCondition::free_boundary());
    REQUIRE(sp.size() == 82);
    GlauberChain chain(sp.states[0], Weights{1, 1, 1}, MoveSet::AllFaces, 42);
    std::vector<long> hits(sp.size(), 0);
    const long burn = 20000, N = 400000;
    for (long s = 0; s < burn; ++s) chain.step();
    for (long s = 0; s < N; ++s) {
        chain.step();
        hits[sp.index.at(chain.x)]++;
    }
    double tv = 0;
    for (long h : hits) tv += std::abs(double(h) / N - 1.0 / 82);
    CHECK(tv / 2 < 0.03);
}

TEST_CASE("chain is deterministic given the seed") {
    Configuration x0 = ground_state_red(4);
    GlauberChain c1(x0, Weights{1, 1, 2}, MoveSet::AllFaces, 7, 1);
    GlauberChain c2(x0, Weights{1, 1, 2}, MoveSet::AllFaces, 7, 1);
    GlauberChain c3(x0, Weights{1, 1, 2}, MoveSet::AllFaces, 7, 2);
    for (int s = 0; s < 5000; ++s) {
        c1.step();
        c2.step();
        c3.step();
    }
    CHECK(c1.x == c2.x);
    CHECK(c1.accepted == c2.accepted);
    CHECK_FALSE(c1.x == c3.x);
}

TEST_CASE("observables on ground states") {
    int n = 4;
    Configuration xr = ground_state_red(n);
    CHECK(eval_observable("n5", xr) + eval_observable("n6", xr) ==
          doctest::Approx(n * n));
    CHECK(eval_observable("in_CR", xr) == 1.0);
    CHECK(eval_observable("in_CG", xr) == 0.0);
    Configuration xg = ground_state_green(n);
    CHECK(eval_observable("in_CG", xg) == 1.0);
    CHECK(eval_observable("in_CR", xg) == 0.0);
    CHECK(eval_observable("red_fraction", xr) == 1.0);
    CHECK(eval_observable("red_fraction", xg) == 0.0);
    CHECK(eval_observable("intersections", xr) ==
          doctest::Approx(eval_observable("n1", xr)));
    CHECK_THROWS(eval_observable("bogus", xr));
}

TEST_CASE("run_chain records on schedule") {
    GlauberChain chain(ground_state_red(3), Weights{1, 1, 1},
                       MoveSet::AllFaces, 11);
    auto tr = run_chain(chain, 100, 30, {"kept_fraction", "n1"});
    REQUIRE(tr.names.size() == 2);
    REQUIRE(tr.records.size() == 5);  // 0, 30, 60, 90, 100
    CHECK(tr.records.front().step == 0);
    CHECK(tr.records.back().step == 100);
    for (const auto& r : tr.records) CHECK(r.values.size() == 2);
}
