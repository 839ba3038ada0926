#include <catch2/catch_amalgamated.hpp>

#include "rwalks/two_player.hpp"

using namespace rwalks;

TEST_CASE("base case of the episode recursion") {
    auto s = two_player_recursion_base(Rational(1), Rational(1));
    REQUIRE(s.expectation == Rational(1, 4));
    REQUIRE(s.last_from_left == Rational(1, 4));
}

TEST_CASE("recursion halves when expectation equals the return probability") {
    auto s = two_player_recursion_base(Rational(2), Rational(5));
    auto s2 = two_player_recursion_step(s);
    REQUIRE(s2.expectation == s.expectation / 2);
    REQUIRE(s2.last_from_left == s.last_from_left / 2);
}

TEST_CASE("closed form matches the recursion for all small weights") {
    for (long long a = 1; a <= 3; ++a) {
        for (long long b = 1; b <= 3; ++b) {
            auto s = two_player_recursion_base(Rational(a), Rational(b));
            for (long long l = 1; l <= 8; ++l) {
                REQUIRE(s.expectation == two_player_closed_form(Rational(a), Rational(b), l));
                REQUIRE(s.last_from_left == s.expectation);
                s = two_player_recursion_step(s);
            }
        }
    }
}

TEST_CASE("path enumeration equals recursion and closed form exactly") {
    for (long long a = 1; a <= 3; ++a) {
        for (long long b = 1; b <= 3; ++b) {
            auto s = two_player_recursion_base(Rational(a), Rational(b));
            for (long long l = 1; l <= 5; ++l) {
                auto e = enumerate_paths(Rational(a), Rational(b), l);
                INFO("a=" << a << " b=" << b << " l=" << l);
                REQUIRE(e.expectation == s.expectation);
                REQUIRE(e.last_from_left == s.last_from_left);
                REQUIRE(e.expectation == two_player_closed_form(Rational(a), Rational(b), l));
                s = two_player_recursion_step(s);
            }
        }
    }
}

TEST_CASE("enumeration fixed values") {
    auto e1 = enumerate_paths(Rational(1), Rational(1), 1);
    REQUIRE(e1.expectation == Rational(1, 4));
    REQUIRE(e1.last_from_left == Rational(1, 4));
    REQUIRE(e1.path_count == 4);

    auto e2 = enumerate_paths(Rational(1), Rational(1), 2);
    REQUIRE(e2.expectation == Rational(1, 8));

    auto e3 = enumerate_paths(Rational(2), Rational(3), 1);
    REQUIRE(e3.expectation == Rational(1, 5));
    REQUIRE(e3.last_from_left == Rational(1, 5));
}

TEST_CASE("enumeration rejects out-of-range half-lengths") {
    REQUIRE_THROWS_AS(enumerate_paths(Rational(1), Rational(1), 7), std::invalid_argument);
    REQUIRE_THROWS_AS(enumerate_paths(Rational(1), Rational(1), 0), std::invalid_argument);
}

TEST_CASE("alternating four-step expectation is the martingale identity") {
    REQUIRE(alternating_martingale_check(Rational(1), Rational(1)) == Rational(1, 2));
    REQUIRE(alternating_martingale_check(Rational(1), Rational(3)) == Rational(1, 4));
    REQUIRE(alternating_martingale_check(Rational(5), Rational(2)) == Rational(5, 7));
    // property: equals a/(a+b) for a small sweep
    for (long long a = 1; a <= 4; ++a)
        for (long long b = 1; b <= 4; ++b)
            REQUIRE(alternating_martingale_check(Rational(a), Rational(b)) ==
                    Rational(a, a + b));
}

TEST_CASE("reachable fraction set") {
    auto r1 = reachable_fraction_set(Rational(1), Rational(1), 1);
    REQUIRE(r1 == std::set<Rational>{Rational(1, 4), Rational(3, 4)});
    auto r2 = reachable_fraction_set(Rational(1), Rational(1), 2);
    REQUIRE(r2.count(Rational(1, 6)) == 1);
    REQUIRE(r2.count(Rational(1, 2)) == 1);
    REQUIRE(r2.count(Rational(5, 6)) == 1);
    // 0 and 1 are never reachable
    for (const auto& r : reachable_fraction_set(Rational(2), Rational(3), 6)) {
        REQUIRE(r > 0);
        REQUIRE(r < 1);
    }
}
