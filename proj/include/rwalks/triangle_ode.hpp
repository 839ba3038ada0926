#pragma once

// Mean-field analysis of the multiplicatively biased walk on the triangle:
// stationary node and edge distributions of the frozen chain, the simplex
// vector field d c / d t = pi_edge(c) - c, and a fixed-step 4th order
// integrator that projects back onto the simplex after every step.
//
// Only pi(1) and pi_edge(1) are written out; the other components follow by
// cyclically rotating the weights, and the node distribution is validated
// against the balance equations.

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace rwalks {

struct SimplexPoint {
    std::array<double, 3> c{};

    SimplexPoint() = default;
    SimplexPoint(double c1, double c2, double c3) : c{c1, c2, c3} {
        double sum = c1 + c2 + c3;
        if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("components must sum to 1");
        for (double x : c)
            if (x < 0.0) throw std::invalid_argument("components must be nonnegative");
    }

    static SimplexPoint uniform() { return SimplexPoint(1.0 / 3, 1.0 / 3, 1.0 / 3); }

    bool interior() const { return c[0] > 0.0 && c[1] > 0.0 && c[2] > 0.0; }

    double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
};

struct StationaryDist {
    std::array<double, 3> node{};
    std::array<double, 3> edge{};
};

namespace detail {

inline double node_weight_poly(double lambda, double c1, double c2, double c3) {
    double l2 = lambda * lambda;
    return l2 * lambda * c1 * c2 * c3 + l2 * (c1 * c1 * c3 + c2 * c3 * c3) +
           lambda * (c1 * c1 * c2 + c1 * c3 * c3) + c1 * c2 * c3;
}

} // namespace detail

// Stationary distribution over the three nodes of the frozen chain with
// normalized edge weights c and bias lambda.
inline std::array<double, 3> stationary_node_dist(const SimplexPoint& c, double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("lambda must be positive");
    if (!c.interior()) throw std::domain_error("stationary distribution needs interior weights");
    std::array<double, 3> pi{detail::node_weight_poly(lambda, c[0], c[1], c[2]),
                             detail::node_weight_poly(lambda, c[1], c[2], c[0]),
                             detail::node_weight_poly(lambda, c[2], c[0], c[1])};
    double z = pi[0] + pi[1] + pi[2];
    for (double& p : pi) p /= z;
    return pi;
}

// Long-run share of time spent on each edge when the frozen chain runs from
// its stationary distribution.
inline std::array<double, 3> stationary_edge_dist(const SimplexPoint& c, double lambda) {
    auto pi = stationary_node_dist(c, lambda);
    auto edge_term = [&](int i) {
        // edge i sits between node i and its right neighbor
        int left_edge_of_i = (i + 2) % 3;
        int right_node = (i + 1) % 3;
        int left_edge_of_right = i;
        double from_left = lambda * c[i] / (lambda * c[i] + c[left_edge_of_i]) * pi[i];
        double from_right =
            c[left_edge_of_right] / (lambda * c[right_node] + c[left_edge_of_right]) * pi[right_node];
        return from_left + from_right;
    };
    std::array<double, 3> edge{edge_term(0), edge_term(1), edge_term(2)};
    double z = edge[0] + edge[1] + edge[2]; // exactly 1 in exact arithmetic
    for (double& e : edge) e /= z;
    return edge;
}

// max_v |pi(v) - sum_u pi(u) P(u, v)| for the frozen chain; the closed-form
// distribution must satisfy this to ~1e-10.
inline double balance_residual(const SimplexPoint& c, double lambda) {
    auto pi = stationary_node_dist(c, lambda);
    double residual = 0.0;
    for (int v = 0; v < 3; ++v) {
        // arrivals into v: from the left neighbor moving right, from the
        // right neighbor moving left
        int left = (v + 2) % 3;
        int right = (v + 1) % 3;
        double from_left = pi[left] * (lambda * c[left] / (lambda * c[left] + c[(left + 2) % 3]));
        double from_right = pi[right] * (c[v] / (lambda * c[right] + c[v]));
        residual = std::max(residual, std::abs(pi[v] - from_left - from_right));
    }
    return residual;
}

// d c / d t = pi_edge(c) - c; components sum to zero.
inline std::array<double, 3> vector_field(const SimplexPoint& c, double lambda) {
    auto edge = stationary_edge_dist(c, lambda);
    return {edge[0] - c[0], edge[1] - c[1], edge[2] - c[2]};
}

struct OdeResult {
    std::vector<double> times;
    std::vector<SimplexPoint> points;
    SimplexPoint final_point;
    double max_correction = 0.0;  // largest per-step simplex projection
    bool accuracy_warning = false;
};

// Classical fixed-step 4th order integration with per-step clamping and
// renormalization onto the simplex. A projection larger than 1e-6 in one step
// flags the step size as too coarse.
inline OdeResult integrate(const SimplexPoint& c0, double lambda, double horizon,
                           double step = 1e-3, std::size_t store_every = 0) {
    if (!c0.interior()) throw std::domain_error("initial point must be interior");
    if (!(horizon >= 0.0) || !(step > 0.0)) throw std::invalid_argument("bad horizon or step");

    OdeResult out;
    std::array<double, 3> y{c0[0], c0[1], c0[2]};
    auto field = [&](const std::array<double, 3>& v) {
        return vector_field(SimplexPoint(v[0], v[1], v[2]), lambda);
    };
    auto record = [&](double t) {
        out.times.push_back(t);
        out.points.push_back(SimplexPoint(y[0], y[1], y[2]));
    };
    if (store_every > 0) record(0.0);

    double t = 0.0;
    std::size_t step_index = 0;
    while (t < horizon - 1e-15) {
        double h = std::min(step, horizon - t);
        auto k1 = field(y);
        std::array<double, 3> tmp;
        for (int i = 0; i < 3; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
        auto k2 = field(tmp);
        for (int i = 0; i < 3; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
        auto k3 = field(tmp);
        for (int i = 0; i < 3; ++i) tmp[i] = y[i] + h * k3[i];
        auto k4 = field(tmp);
        std::array<double, 3> raw;
        for (int i = 0; i < 3; ++i)
            raw[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        // project: clamp negatives, renormalize
        std::array<double, 3> proj = raw;
        for (double& x : proj) x = std::max(x, 0.0);
        double sum = proj[0] + proj[1] + proj[2];
        for (double& x : proj) x /= sum;
        double correction = 0.0;
        for (int i = 0; i < 3; ++i) correction += std::abs(proj[i] - raw[i]);
        out.max_correction = std::max(out.max_correction, correction);
        y = proj;
        t += h;
        ++step_index;
        if (store_every > 0 && step_index % store_every == 0) record(t);
    }
    if (store_every > 0 && (out.times.empty() || out.times.back() != t)) record(t);
    out.final_point = SimplexPoint(y[0], y[1], y[2]);
    out.accuracy_warning = out.max_correction > 1e-6;
    return out;
}

} // namespace rwalks
