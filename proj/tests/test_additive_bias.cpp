#include <catch2/catch_amalgamated.hpp>

#include <boost/math/special_functions/digamma.hpp>

#include "rwalks/additive_bias.hpp"
#include "rwalks/beta_moments.hpp"

using namespace rwalks;

TEST_CASE("beta ratio moments: closed forms and divergence") {
    // alpha = 2, beta = 1, t = 1: beta/(alpha-1) = 1
    REQUIRE(beta_ratio_moment(BetaParams(2, 1), 1.0, RatioSide::ComplementOverValue) ==
            Catch::Approx(1.0));
    // divergence is a value
    REQUIRE(std::isinf(beta_ratio_moment(BetaParams(1, 1), 1.0, RatioSide::ComplementOverValue)));
    REQUIRE(std::isinf(beta_ratio_moment(BetaParams(2, 1), 1.0, RatioSide::ValueOverComplement)));
    // symmetry of the two sides at alpha = beta
    for (double t : {0.2, 0.4, -0.3}) {
        double lhs = beta_ratio_moment(BetaParams(1.7, 1.7), t, RatioSide::ComplementOverValue);
        double rhs = beta_ratio_moment(BetaParams(1.7, 1.7), t, RatioSide::ValueOverComplement);
        REQUIRE(lhs == Catch::Approx(rhs));
    }
    // t = 1 equals beta/(alpha-1) whenever alpha > 1
    for (auto [a, b] : std::vector<std::pair<double, double>>{{2, 1}, {3, 0.5}, {1.5, 2}}) {
        REQUIRE(beta_ratio_moment(BetaParams(a, b), 1.0, RatioSide::ComplementOverValue) ==
                Catch::Approx(b / (a - 1.0)));
    }
}

TEST_CASE("beta ratio moments match Monte Carlo") {
    for (auto [a, b] : std::vector<std::pair<double, double>>{{2, 1}, {3, 0.5}, {1.5, 2}}) {
        double t = 0.3; // inside the finite band for all three pairs
        double closed = beta_ratio_moment(BetaParams(a, b), t, RatioSide::ComplementOverValue);
        Rng rng(derive_seed(31, "beta-mc", static_cast<std::uint64_t>(a * 10 + b * 100)));
        const int n = 400000;
        double sum = 0.0, sum_sq = 0.0;
        for (int i = 0; i < n; ++i) {
            double w = rng.beta(a, b);
            double v = std::pow((1.0 - w) / w, t);
            sum += v;
            sum_sq += v * v;
        }
        double mean = sum / n;
        double se = std::sqrt((sum_sq / n - mean * mean) / (n - 1));
        REQUIRE(std::abs(mean - closed) < 3.0 * se);
    }
}

TEST_CASE("drift signs across the recurrence boundary") {
    REQUIRE(solomon_drift(0.5) > 0.0);
    REQUIRE(std::abs(solomon_drift(1.0)) < 1e-6);
    REQUIRE(solomon_drift(2.0) < 0.0);
}

TEST_CASE("drift quadrature matches the digamma closed form") {
    // E[ln((1-w)/w)] for w ~ Beta(alpha, 1) equals digamma(1) - digamma(alpha)
    for (double lambda : {0.0, 0.5, 1.0, 2.0, 4.0}) {
        double alpha = (1.0 + lambda) / 2.0;
        double expect = boost::math::digamma(1.0) - boost::math::digamma(alpha);
        REQUIRE(solomon_drift(lambda) == Catch::Approx(expect).margin(1e-8));
    }
}

TEST_CASE("drift quadrature matches Monte Carlo") {
    for (double lambda : {0.5, 1.0, 2.0}) {
        Rng rng(derive_seed(77, "solomon", static_cast<std::uint64_t>(lambda * 8)));
        auto mc = solomon_drift_mc(lambda, 400000, rng);
        REQUIRE(std::abs(mc.mean - solomon_drift(lambda)) < 3.0 * mc.std_error);
    }
}

TEST_CASE("classification and speed") {
    REQUIRE(classify_additive_bias(1.0) == AdditiveBiasClass::Recurrent);
    REQUIRE(classify_additive_bias(0.0) == AdditiveBiasClass::Recurrent);
    REQUIRE(classify_additive_bias(1.5) == AdditiveBiasClass::TransientRight);
    REQUIRE_THROWS_AS(classify_additive_bias(-0.1), std::domain_error);

    REQUIRE(speed_additive_bias(3.0) == 0.0);
    REQUIRE(speed_additive_bias(5.0) == Catch::Approx(1.0 / 3.0));
    REQUIRE(speed_additive_bias(1e9) == Catch::Approx(1.0).margin(1e-8));
    // drift sign agrees with the classification on the declared grid
    for (double lambda : {0.0, 0.5, 1.0, 1.5, 2.0, 4.0}) {
        double d = solomon_drift(lambda);
        if (classify_additive_bias(lambda) == AdditiveBiasClass::TransientRight)
            REQUIRE(d < 0.0);
        else
            REQUIRE(d > -1e-3);
    }
}
