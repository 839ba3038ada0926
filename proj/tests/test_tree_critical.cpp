#include <catch2/catch_amalgamated.hpp>

#include "rwalks/tree_critical.hpp"

using namespace rwalks;

namespace {

// Independent root scan: repeated 100-cell grid refinement of the sign
// change, no bisection involved.
double fine_grid_root(double branching) {
    double target = 1.0 / branching;
    double lo = 1e-6, hi = 1e3;
    for (int round = 0; round < 8; ++round) {
        const int n = 100;
        for (int i = 0; i < n; ++i) {
            double a = lo + (hi - lo) * i / n;
            double b = lo + (hi - lo) * (i + 1) / n;
            if (tree_weight_lhs(a) - target > 0.0 && tree_weight_lhs(b) - target <= 0.0) {
                lo = a;
                hi = b;
                break;
            }
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("root for branching number 2") {
    auto r = tree_critical_weight(2.0);
    REQUIRE(r.residual < 1e-10);
    REQUIRE(r.critical_weight == Catch::Approx(1.0 / r.delta0));
    REQUIRE(std::abs(tree_weight_lhs(r.delta0) - 0.5) < 1e-9);
    REQUIRE(r.delta0 == Catch::Approx(fine_grid_root(2.0)).margin(1e-8));
}

TEST_CASE("branching to root map is monotone") {
    double prev = -1.0;
    for (int i = 0; i < 50; ++i) {
        double br = 1.1 + (10.0 - 1.1) * i / 49.0;
        auto r = tree_critical_weight(br);
        REQUIRE(r.residual < 1e-9);
        REQUIRE(r.delta0 > prev);
        prev = r.delta0;
    }
}

TEST_CASE("boundary behavior near branching one") {
    REQUIRE_THROWS_AS(tree_critical_weight(1.0), std::domain_error);
    REQUIRE_THROWS_AS(tree_critical_weight(0.5), std::domain_error);
    // extremely close to 1 the equation has no root inside the bracket
    REQUIRE_THROWS(tree_critical_weight(1.0 + 1e-9));
}
