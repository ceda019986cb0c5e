#include <doctest.h>

#include <sixv/exact.hpp>
#include <sixv/lattice.hpp>
#include <sixv/paths.hpp>
#include <sixv/serialize.hpp>
#include <sixv/weights.hpp>

using namespace sixv;

TEST_CASE("edge indexing is a bijection with documented ranges") {
    Lattice lat(3);
    CHECK(lat.num_edges() == 2 * 3 * 4);
    std::vector<int> seen(lat.num_edges(), 0);
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i <= 3; ++i) seen[lat.h_edge(j, i)]++;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j <= 3; ++j) seen[lat.v_edge(i, j)]++;
    for (int e = 0; e < lat.num_edges(); ++e) CHECK(seen[e] == 1);
    CHECK(lat.is_horizontal(lat.h_edge(2, 3)));
    CHECK(!lat.is_horizontal(lat.v_edge(0, 0)));
}

TEST_CASE("phase classification") {
    CHECK(delta({1, 1, 1}) == doctest::Approx(0.5));
    CHECK(classify_phase({1, 1, 1}) == Phase::Disordered);
    CHECK(delta({3, 1, 1}) == doctest::Approx(1.5));
    CHECK(classify_phase({3, 1, 1}) == Phase::Ferroelectric);
    CHECK(delta({1, 1, 3}) == doctest::Approx(-3.5));
    CHECK(classify_phase({1, 1, 3}) == Phase::Antiferroelectric);
    CHECK(is_antiferroelectric({1, 1, 3}));
    CHECK(!is_antiferroelectric({1, 1, 1.9}));  // a+b<c fails
}

TEST_CASE("ground states are valid all-c states") {
    for (int n : {1, 2, 3, 4, 5}) {
        Configuration xr = ground_state_red(n);
        CHECK(ice_ok(xr));
        auto tc = type_counts(xr);
        CHECK(tc[0] + tc[1] + tc[2] + tc[3] == 0);
        CHECK(tc[4] + tc[5] == n * n);
        Configuration xg = ground_state_green(n);
        CHECK(ice_ok(xg));
        auto tg = type_counts(xg);
        CHECK(tg[4] + tg[5] == n * n);
        CHECK(!(xr == xg));
        // reversing every edge swaps the ground states
        CHECK(reverse_all_edges(xr) == xg);
    }
}

TEST_CASE("all-corner ground state weight is c^(n^2)") {
    Configuration xr = ground_state_red(2);
    CHECK(config_weight<double>(xr, 1.0, 1.0, 2.0) == doctest::Approx(16.0));
    CHECK(config_weight<Rational>(xr, Rational(1), Rational(1), Rational(2)) ==
          Rational(16));
}

TEST_CASE("free-boundary state counts: 6, 82, 2604") {
    const long expected[] = {6, 82, 2604};
    for (int n = 1; n <= 3; ++n) {
        auto sp = enumerate_states(n, BoundaryCondition::free_boundary());
        CHECK(sp.size() == expected[n - 1]);
        for (const auto& x : sp.states) CHECK(ice_ok(x));
        CHECK(count_states_transfer(n, BoundaryCondition::free_boundary()) ==
              static_cast<unsigned long long>(expected[n - 1]));
    }
}

TEST_CASE("domain-wall counts are the ASM numbers 1, 2, 7, 42") {
    const long expected[] = {1, 2, 7, 42};
    for (int n = 1; n <= 4; ++n) {
        auto bc = BoundaryCondition::domain_wall(n);
        auto sp = enumerate_states(n, bc);
        CHECK(sp.size() == expected[n - 1]);
        for (const auto& x : sp.states) {
            CHECK(ice_ok(x));
            CHECK(bc.satisfied_by(x));
        }
        CHECK(count_states_transfer(n, bc) ==
              static_cast<unsigned long long>(expected[n - 1]));
    }
}

TEST_CASE("enumeration cap throws") {
    CHECK_THROWS_AS(enumerate_states(3, BoundaryCondition::free_boundary(), 100),
                    EnumerationCapExceeded);
}

TEST_CASE("free n=1 partition function at (1,1,2) is 8") {
    auto sp = enumerate_states(1, BoundaryCondition::free_boundary());
    CHECK(partition_function<double>(sp, 1, 1, 2) == doctest::Approx(8.0));
    CHECK(partition_function<Rational>(sp, Rational(1), Rational(1),
                                       Rational(2)) == Rational(8));
}

TEST_CASE("canonical state indexing is lexicographic in edge bits") {
    auto sp = enumerate_states(2, BoundaryCondition::free_boundary());
    for (int k = 0; k + 1 < sp.size(); ++k)
        CHECK(detail::config_less(sp.states[k], sp.states[k + 1]));
    for (int k = 0; k < sp.size(); ++k) CHECK(sp.index.at(sp.states[k]) == k);
}

TEST_CASE("vertex classification covers all six types on free n=2") {
    auto sp = enumerate_states(2, BoundaryCondition::free_boundary());
    std::array<long, 6> totals{};
    for (const auto& x : sp.states) {
        auto tc = type_counts(x);
        for (int t = 0; t < 6; ++t) totals[t] += tc[t];
    }
    // a1/a2, b3/b4, c5/c6 appear equally often by symmetry of the free space
    CHECK(totals[0] == totals[1]);
    CHECK(totals[2] == totals[3]);
    CHECK(totals[4] == totals[5]);
    for (int t = 0; t < 6; ++t) CHECK(totals[t] > 0);
}

TEST_CASE("path decomposition round-trips") {
    for (int n : {1, 2, 3}) {
        auto sp = enumerate_states(n, BoundaryCondition::free_boundary());
        for (const auto& x : sp.states) {
            auto ps = to_paths(x);
            CHECK(from_paths(ps) == x);
            long kept = 0;
            Lattice lat(n);
            for (int e = 0; e < lat.num_edges(); ++e) kept += x.kept(e);
            long edge_sum = 0;
            for (const auto& p : ps.paths) edge_sum += p.length();
            CHECK(edge_sum == kept);
        }
    }
}

TEST_CASE("path intersections count crossing vertices") {
    auto sp = enumerate_states(2, BoundaryCondition::free_boundary());
    for (const auto& x : sp.states)
        CHECK(path_intersections(x) == type_counts(x)[0]);
}

TEST_CASE("json round trip preserves configuration and boundary") {
    for (int n : {1, 2, 3}) {
        for (auto bc : {BoundaryCondition::free_boundary(),
                        BoundaryCondition::domain_wall(n)}) {
            auto sp = enumerate_states(n, bc);
            for (const auto& x : sp.states) {
                auto j = config_to_json(x, bc);
                auto rt = config_from_json(j);
                CHECK(rt.config == x);
                CHECK(rt.boundary.kind == bc.kind);
            }
        }
    }
}

TEST_CASE("json rejects ill-formed input") {
    auto sp = enumerate_states(2, BoundaryCondition::free_boundary());
    auto j = config_to_json(sp.states[0], BoundaryCondition::free_boundary());
    auto bad = j;
    bad["edges"] = "01";  // wrong length
    CHECK_THROWS(config_from_json(bad));
    bad = j;
    std::string s = bad["edges"].get<std::string>();
    s[0] = (s[0] == '0') ? '1' : '0';  // break the ice rule at a vertex
    bad["edges"] = s;
    CHECK_THROWS(config_from_json(bad));
    bad = j;
    bad["boundary"] = {{"kind", "weird"}};
    CHECK_THROWS(config_from_json(bad));
}

TEST_CASE("explicit boundary condition round trip and validation") {
    // single-path boundary on n=2: west stub of (0,0) in, east stub of (1,1) out
    Lattice lat(2);
    std::vector<std::pair<int, bool>> stubs;
    for (int e : lat.stub_edges()) stubs.emplace_back(e, false);
    for (auto& [e, b] : stubs) {
        if (e == lat.h_edge(0, 0)) b = true;
        if (e == lat.h_edge(1, 2)) b = true;
    }
    auto bc = BoundaryCondition::explicit_stubs(stubs);
    bc.validate(2);
    auto sp = enumerate_states(2, bc);
    // one NE path (0,0) -> (1,1): two interior routes, no stray loops possible
    CHECK(sp.size() == 2);
    for (const auto& x : sp.states) {
        auto ps = to_paths(x);
        CHECK(ps.paths.size() == 1);
        // entry stub + 2 interior steps + exit stub
        CHECK(ps.paths[0].length() == 4);
    }
}
