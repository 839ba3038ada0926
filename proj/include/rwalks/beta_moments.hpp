#pragma once

// Moments of Beta-distributed environment ratios. Divergent parameter ranges
// are a value (+infinity), not an error.

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rwalks {

struct BetaParams {
    double alpha;
    double beta;

    BetaParams(double a, double b) : alpha(a), beta(b) {
        if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("Beta parameters must be positive");
    }

    double mean() const { return alpha / (alpha + beta); }
};

enum class RatioSide {
    ComplementOverValue, // (1-A)/A
    ValueOverComplement  // A/(1-A)
};

// E[((1-A)/A)^t] = Gamma(alpha-t) Gamma(beta+t) / (Gamma(alpha) Gamma(beta))
// when -beta < t < alpha, +infinity otherwise; mirrored for the other side.
inline double beta_ratio_moment(const BetaParams& p, double t, RatioSide side) {
    double a_shift, b_shift;
    if (side == RatioSide::ComplementOverValue) {
        if (!(t < p.alpha && t > -p.beta)) return std::numeric_limits<double>::infinity();
        a_shift = p.alpha - t;
        b_shift = p.beta + t;
    } else {
        if (!(t < p.beta && t > -p.alpha)) return std::numeric_limits<double>::infinity();
        a_shift = p.alpha + t;
        b_shift = p.beta - t;
    }
    return std::exp(std::lgamma(a_shift) + std::lgamma(b_shift) - std::lgamma(p.alpha) -
                    std::lgamma(p.beta));
}

} // namespace rwalks
