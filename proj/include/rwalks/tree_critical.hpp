#pragma once

// Critical initial weight of the linearly reinforced walk on a tree with
// branching number br: Delta_0 solves
//   Gamma((2+D)/(4D))^2 / (Gamma(1/(2D)) Gamma((1+D)/(2D))) = 1/br
// and the critical weight is 1/Delta_0. The left side decreases from 1
// (D -> 0) to 0 (D -> infinity), so a bracketed bisection applies; the
// monotonicity is verified on the bracket before solving.

#include <cmath>
#include <stdexcept>

namespace rwalks {

inline double tree_weight_lhs(double delta) {
    if (!(delta > 0.0)) throw std::domain_error("delta must be positive");
    return std::exp(2.0 * std::lgamma((2.0 + delta) / (4.0 * delta)) -
                    std::lgamma(1.0 / (2.0 * delta)) -
                    std::lgamma((1.0 + delta) / (2.0 * delta)));
}

struct TreeCriticalWeight {
    double delta0 = 0.0;
    double critical_weight = 0.0; // 1 / delta0
    double residual = 0.0;
};

inline TreeCriticalWeight tree_critical_weight(double branching, double lo = 1e-6,
                                               double hi = 1e3) {
    if (!(branching > 1.0)) throw std::domain_error("branching number must exceed 1");
    const double target = 1.0 / branching;

    // monotone decrease on a log grid over the bracket
    constexpr int kGrid = 64;
    double prev = tree_weight_lhs(lo);
    for (int i = 1; i <= kGrid; ++i) {
        double d = lo * std::pow(hi / lo, static_cast<double>(i) / kGrid);
        double v = tree_weight_lhs(d);
        if (v > prev + 1e-12) throw std::runtime_error("left side not monotone on bracket");
        prev = v;
    }

    double f_lo = tree_weight_lhs(lo) - target;
    double f_hi = tree_weight_lhs(hi) - target;
    if (f_lo <= 0.0 || f_hi >= 0.0)
        throw std::domain_error("branching number outside the solvable bracket");

    double a = lo, b = hi;
    for (int i = 0; i < 400; ++i) {
        double m = 0.5 * (a + b);
        double fm = tree_weight_lhs(m) - target;
        if (std::abs(fm) < 1e-10 || (b - a) < 1e-15 * m) {
            return {m, 1.0 / m, std::abs(fm)};
        }
        if (fm > 0.0) a = m; else b = m;
    }
    double m = 0.5 * (a + b);
    return {m, 1.0 / m, std::abs(tree_weight_lhs(m) - target)};
}

} // namespace rwalks
