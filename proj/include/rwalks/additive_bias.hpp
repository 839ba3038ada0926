#pragma once

// Analysis of the additively biased walk through its i.i.d. Beta environment:
// the log-ratio drift that decides the transience direction, the hard-coded
// recurrence classification, and the explicit speed formula.
//
// The drift integral has endpoint singularities; both halves are mapped to
// exponentially decaying integrands (x = e^-u on the left half, 1-x = e^-u on
// the right) before adaptive Simpson is applied.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "rwalks/rng.hpp"

namespace rwalks {

namespace detail {

inline double simpson(const std::function<double(double)>& f, double a, double b, double fa,
                      double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
    if (depth > 60)
        throw std::runtime_error("adaptive quadrature did not converge on [" + std::to_string(a) +
                                 ", " + std::to_string(b) + "]");
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(f, a, m, fa, flm, fm);
    double right = simpson(f, m, b, fm, frm, fb);
    if (std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth + 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth + 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = simpson(f, a, b, fa, fm, fb);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 0);
}

} // namespace detail

// E[ln((1-w)/w)] for w ~ Beta((1+lambda)/2, 1), the law at nodes right of the
// root. Sign decides the transience direction of the i.i.d. chain.
inline double solomon_drift(double lambda, double tol = 1e-11) {
    if (!(lambda >= 0.0)) throw std::domain_error("lambda must be nonnegative");
    const double c = (1.0 + lambda) / 2.0; // normalizing constant of the Beta density
    const double ln2 = std::log(2.0);
    // left half, x = e^-u:  integrand (u + log(1 - e^-u)) e^{-u(lambda+1)/2}
    const double rate_left = (lambda + 1.0) / 2.0;
    double cutoff_left = ln2 + 80.0 / std::min(rate_left, 1.0);
    double left = detail::adaptive_simpson(
        [&](double u) { return (u + std::log1p(-std::exp(-u))) * std::exp(-u * rate_left); }, ln2,
        cutoff_left, tol);
    // right half, 1-x = e^-u: integrand -(u + log(1 - e^-u)) (1-e^-u)^{(lambda-1)/2} e^-u
    double cutoff_right = ln2 + 80.0;
    double right = detail::adaptive_simpson(
        [&](double u) {
            return -(u + std::log1p(-std::exp(-u))) *
                   std::pow(-std::expm1(-u), (lambda - 1.0) / 2.0) * std::exp(-u);
        },
        ln2, cutoff_right, tol);
    return c * (left + right);
}

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
};

// Same drift by direct sampling; Beta(alpha, 1) inverts exactly as U^(1/alpha).
inline MonteCarloEstimate solomon_drift_mc(double lambda, std::uint64_t n, Rng& rng) {
    if (!(lambda >= 0.0)) throw std::domain_error("lambda must be nonnegative");
    const double alpha = (1.0 + lambda) / 2.0;
    double sum = 0.0, sum_sq = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        double log_w = std::log(rng.uniform_open()) / alpha;
        double w = std::exp(log_w);
        double v = std::log1p(-w) - log_w;
        sum += v;
        sum_sq += v * v;
    }
    double mean = sum / static_cast<double>(n);
    double var = (sum_sq / static_cast<double>(n) - mean * mean) / static_cast<double>(n - 1) *
                 static_cast<double>(n);
    return {mean, std::sqrt(var / static_cast<double>(n)), n};
}

enum class AdditiveBiasClass { Recurrent, TransientRight };

// The proven classification; the drift above is an independent cross-check,
// not the source of truth.
inline AdditiveBiasClass classify_additive_bias(double lambda) {
    if (!(lambda >= 0.0)) throw std::domain_error("lambda must be nonnegative");
    return lambda <= 1.0 ? AdditiveBiasClass::Recurrent : AdditiveBiasClass::TransientRight;
}

// Asymptotic speed X_n / n: zero up to lambda = 3, then (lambda-3)/(lambda+1).
inline double speed_additive_bias(double lambda) {
    if (!(lambda >= 0.0)) throw std::domain_error("lambda must be nonnegative");
    if (lambda <= 3.0) return 0.0;
    return (lambda - 3.0) / (lambda + 1.0);
}

} // namespace rwalks
