#include <doctest.h>

#include <sixv/nbwalk.hpp>

using namespace sixv;

TEST_CASE("walk weight examples") {
    CHECK(walk_weight_g<double>("SLRSSL", 2.0, 3.0) ==
          doctest::Approx(16 * 9));  // a^4 b^2
    CHECK(walk_weight_g<double>("S", 2.0, 3.0) == 2.0);
    CHECK(walk_weight_g<double>("SL", 2.0, 3.0) == 6.0);
    CHECK(walk_weight_g(std::string("SLRSSL"), Rational(2), Rational(3)) ==
          Rational(144));
    CHECK_THROWS(walk_weight_g<double>("LS", 1.0, 1.0));
    CHECK_THROWS(walk_weight_g<double>("SX", 1.0, 1.0));
}

TEST_CASE("small F values by hand") {
    // F_1 = x + y, F_2 = x^2 + 4xy + y^2
    for (double x : {0.5, 1.0, 2.0})
        for (double y : {0.3, 1.0, 1.7}) {
            CHECK(F_brute(1, x, y) == doctest::Approx(x + y));
            CHECK(F_brute(2, x, y) ==
                  doctest::Approx(x * x + 4 * x * y + y * y));
        }
    CHECK(F_brute_rational(2, Rational(1, 2), Rational(1, 3)) ==
          Rational(1, 4) + 4 * Rational(1, 6) + Rational(1, 9));
}

TEST_CASE("F_n(1,1) = 2 * 3^(n-1)") {
    for (int n : {1, 2, 3, 5, 10, 20, 40}) {
        Rational want = 2 * rational_pow(Rational(3), n - 1);
        CHECK(F_closed_form_rational(n, Rational(1), Rational(1)) == want);
        if (n <= 20) CHECK(F_brute_rational(n, Rational(1), Rational(1)) == want);
    }
}

TEST_CASE("brute force, recurrence, and closed form agree") {
    for (int n = 1; n <= 12; ++n)
        for (auto [x, y] : {std::pair{0.4, 0.9}, {1.0, 1.0}, {2.5, 0.1}}) {
            double fb = F_brute(n, x, y);
            CHECK(F_recurrence(n, x, y) == doctest::Approx(fb));
            CHECK(F_closed_form(n, x, y) == doctest::Approx(fb));
        }
    for (int n = 1; n <= 12; ++n)
        for (auto [x, y] : {std::pair{Rational(2, 5), Rational(9, 10)},
                            {Rational(1), Rational(1)},
                            {Rational(5, 2), Rational(1, 10)}}) {
            Rational fb = F_brute_rational(n, x, y);
            CHECK(F_recurrence(n, x, y) == fb);
            CHECK(F_closed_form_rational(n, x, y) == fb);
        }
}

TEST_CASE("upper bound dominates F") {
    for (int n = 1; n <= 40; ++n)
        for (auto [x, y] : {std::pair{0.2, 0.2}, {0.05, 0.3}, {1.5, 0.7}})
            CHECK(F_recurrence(n, x, y) <= F_upper_bound(n, x, y) * (1 + 1e-12));
}

TEST_CASE("antiferroelectric decay condition") {
    // c = 3a with a = b sits exactly on the boundary: base 1
    CHECK(decay_base(1, 1, 3) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(afe_hypothesis(Rational(1), Rational(1), Rational(3)));
    // strict example
    CHECK(afe_hypothesis(Rational(1), Rational(1), Rational(4)));
    CHECK(afe_conclusion(Rational(1), Rational(1), Rational(4)));
    CHECK(decay_base(1, 1, 4) == doctest::Approx(0.75));
    CHECK(decay_base(1, 1, 4) < 1);
}
