#include <catch2/catch_amalgamated.hpp>

#include "rwalks/rng.hpp"

using namespace rwalks;

TEST_CASE("identical seeds reproduce identical streams") {
    Rng a(12345), b(12345);
    for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u64() == b.next_u64());
}

TEST_CASE("derived streams differ across indices and tags") {
    REQUIRE(derive_seed(7, "ensemble", 0) != derive_seed(7, "ensemble", 1));
    REQUIRE(derive_seed(7, "ensemble", 0) != derive_seed(7, "polya", 0));
    REQUIRE(derive_seed(7, "ensemble", 3) == derive_seed(7, "ensemble", 3));
}

TEST_CASE("uniform01 lies in [0,1) and has the right mean") {
    Rng rng(99);
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        double u = rng.uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    REQUIRE(std::abs(sum / n - 0.5) < 0.005);
}

TEST_CASE("below(n) is unbiased over small ranges") {
    Rng rng(4);
    std::array<int, 3> counts{};
    const int n = 90000;
    for (int i = 0; i < n; ++i) ++counts[rng.below(3)];
    for (int c : counts) REQUIRE(std::abs(c - n / 3) < 600);
}

TEST_CASE("beta sampler matches the Beta mean") {
    Rng rng(2024);
    const int n = 100000;
    auto mean_of = [&](double a, double b) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += rng.beta(a, b);
        return s / n;
    };
    REQUIRE(std::abs(mean_of(2.0, 1.0) - 2.0 / 3.0) < 0.01);
    REQUIRE(std::abs(mean_of(0.5, 0.5) - 0.5) < 0.01);
    REQUIRE(std::abs(mean_of(3.0, 0.5) - 3.0 / 3.5) < 0.01);
}

TEST_CASE("beta sampler survives tiny shape parameters") {
    Rng rng(5);
    for (int i = 0; i < 1000; ++i) {
        double w = rng.beta(0.5, 1e-6);
        REQUIRE(w > 0.0);
        REQUIRE(w < 1.0);
        REQUIRE(w > 0.9); // almost all mass at 1 when beta is tiny
    }
}

TEST_CASE("gamma sampler mean") {
    Rng rng(77);
    const int n = 100000;
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += rng.gamma_sample(3.5);
    REQUIRE(std::abs(s / n - 3.5) < 0.05);
}
