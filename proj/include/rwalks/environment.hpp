#pragma once

// Random environments on the integer line: node-dependent Beta laws for the
// right-step probabilities, the derived conductance network, effective
// resistance with explicit divergence detection, and the frozen-environment
// walk.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "rwalks/beta_moments.hpp"
#include "rwalks/graph.hpp"
#include "rwalks/rng.hpp"
#include "rwalks/trajectory.hpp"

namespace rwalks {

struct EnvironmentLaw {
    enum class Kind { AdditiveBias, TransientInitial, IID };

    Kind kind = Kind::IID;
    double lambda = 1.0;
    double iid_alpha = 1.0;
    double iid_beta = 1.0;

    static EnvironmentLaw additive_bias(double lambda) {
        if (!(lambda >= 0.0)) throw std::domain_error("additive bias needs lambda >= 0");
        return {Kind::AdditiveBias, lambda, 0, 0};
    }

    static EnvironmentLaw transient_initial(double lambda) {
        if (!(lambda > 0.0)) throw std::domain_error("transient initial law needs lambda > 0");
        return {Kind::TransientInitial, lambda, 0, 0};
    }

    static EnvironmentLaw iid(BetaParams p) { return {Kind::IID, 0.0, p.alpha, p.beta}; }

    // Beta parameters of the right-step probability at node x.
    BetaParams node_params(std::int64_t x) const {
        switch (kind) {
            case Kind::AdditiveBias: {
                if (x > 0) return checked((1.0 + lambda) / 2.0, 1.0, x);
                if (x == 0) return checked((1.0 + lambda) / 2.0, 0.5, x);
                return checked((2.0 + lambda) / 2.0, 0.5, x);
            }
            case Kind::TransientInitial: {
                double lx = std::pow(lambda, static_cast<double>(x));
                double lxm1 = std::pow(lambda, static_cast<double>(x - 1));
                if (x > 0) return checked(lx / 2.0, (1.0 + lxm1) / 2.0, x);
                if (x == 0) return checked(0.5, 1.0 / (2.0 * lambda), x);
                return checked((1.0 + lx) / 2.0, lxm1 / 2.0, x);
            }
            case Kind::IID: return BetaParams(iid_alpha, iid_beta);
        }
        throw std::logic_error("unreachable");
    }

private:
    static BetaParams checked(double a, double b, std::int64_t x) {
        if (!(a > 1e-300) || !(b > 1e-300) || !std::isfinite(a) || !std::isfinite(b))
            throw std::range_error("Beta parameter under/overflow at node " + std::to_string(x));
        return BetaParams(a, b);
    }
};

// A sampled environment over a finite node range. omega[x] is the probability
// of stepping right at x. Conductances are logs of the ratio products with
// the edge {0,1} normalized to 1.
class Environment {
public:
    Environment(std::int64_t z_min, std::int64_t z_max, std::vector<double> omega)
        : z_min_(z_min), z_max_(z_max), omega_(std::move(omega)) {
        if (z_min_ > 0 || z_max_ < 0 || omega_.size() != static_cast<std::size_t>(z_max_ - z_min_ + 1))
            throw std::invalid_argument("environment range must contain 0 and match omega size");
        for (double w : omega_)
            if (!(w > 0.0) || !(w < 1.0)) throw std::invalid_argument("omega must lie in (0,1)");
        build_log_conductances();
    }

    std::int64_t z_min() const { return z_min_; }
    std::int64_t z_max() const { return z_max_; }

    double omega(std::int64_t x) const {
        if (x < z_min_ || x > z_max_) throw std::out_of_range("node outside sampled range");
        return omega_[static_cast<std::size_t>(x - z_min_)];
    }

    // log conductance of the edge {j, j+1}; defined for z_min-1 <= j <= z_max.
    double log_conductance(std::int64_t j) const {
        if (j < z_min_ - 1 || j > z_max_) throw std::out_of_range("edge outside sampled range");
        return log_c_[static_cast<std::size_t>(j - (z_min_ - 1))];
    }

    double conductance(std::int64_t j) const { return std::exp(log_conductance(j)); }
    double resistance(std::int64_t j) const { return std::exp(-log_conductance(j)); }

private:
    void build_log_conductances() {
        log_c_.assign(static_cast<std::size_t>(z_max_ - (z_min_ - 1) + 1), 0.0);
        auto at = [&](std::int64_t j) -> double& {
            return log_c_[static_cast<std::size_t>(j - (z_min_ - 1))];
        };
        at(0) = 0.0; // c_{0,1} = 1
        double acc = 0.0;
        for (std::int64_t j = 1; j <= z_max_; ++j) { // c_{j,j+1} = prod_{x=1..j} w/(1-w)
            double w = omega(j);
            acc += std::log(w) - std::log1p(-w);
            at(j) = acc;
        }
        acc = 0.0;
        for (std::int64_t j = -1; j >= z_min_ - 1; --j) { // c_{j,j+1} = prod_{x=j+1..0} (1-w)/w
            double w = omega(j + 1);
            acc += std::log1p(-w) - std::log(w);
            at(j) = acc;
        }
    }

    std::int64_t z_min_;
    std::int64_t z_max_;
    std::vector<double> omega_;
    std::vector<double> log_c_;
};

// Node probabilities come from independent per-node streams derived from the
// seed, so the sampled omega at node x does not depend on sampling order.
inline double sample_omega(const EnvironmentLaw& law, std::int64_t x, std::uint64_t seed) {
    BetaParams p = law.node_params(x);
    Rng rng = derive_stream(seed, "env-node", static_cast<std::uint64_t>(x) * 2654435761u + 17);
    double w = rng.beta(p.alpha, p.beta);
    const double eps = 1e-15;
    return std::min(1.0 - eps, std::max(eps, w));
}

inline Environment sample_environment(const EnvironmentLaw& law, std::int64_t z_min,
                                      std::int64_t z_max, std::uint64_t seed) {
    if (z_min > 0 || z_max < 0) throw std::invalid_argument("range must contain 0");
    std::vector<double> omega;
    omega.reserve(static_cast<std::size_t>(z_max - z_min + 1));
    for (std::int64_t x = z_min; x <= z_max; ++x) omega.push_back(sample_omega(law, x, seed));
    return Environment(z_min, z_max, std::move(omega));
}

// ---- effective resistance ------------------------------------------------

enum class SeriesStatus { Converged, Diverged, Inconclusive };

struct SeriesResult {
    SeriesStatus status = SeriesStatus::Inconclusive;
    double partial_sum = 0.0;
    double tail_bound = 0.0; // certified bound when converged
    std::int64_t terms_used = 0;
};

struct ResistanceOptions {
    double tail_tolerance = 1e-12;
    double divergence_sum = 1e12;   // partial sum beyond this is divergence
    int stall_count = 1000;         // this many consecutive terms > stall_term
    double stall_term = 1e-3;       //   also count as divergence
    int ratio_window = 100;         // geometric tail extrapolation window
};

enum class WalkClass { Recurrent, Transient, Inconclusive };

struct EffectiveResistance {
    SeriesResult right;
    SeriesResult left;
    WalkClass classification = WalkClass::Inconclusive;
    std::optional<double> value; // +inf when recurrent, absent when inconclusive
};

namespace detail {

// Stream the series of log-terms; apply the declared divergence and
// geometric-tail convergence rules.
template <class LogTermFn>
SeriesResult sum_series(std::int64_t n_terms, const ResistanceOptions& opt, LogTermFn log_term) {
    SeriesResult res;
    std::vector<double> recent_log; // last ratio_window log-terms
    int stall = 0;
    for (std::int64_t i = 0; i < n_terms; ++i) {
        double lt = log_term(i);
        double term = std::exp(lt);
        res.partial_sum += term;
        res.terms_used = i + 1;
        if (res.partial_sum > opt.divergence_sum) {
            res.status = SeriesStatus::Diverged;
            return res;
        }
        stall = (term > opt.stall_term) ? stall + 1 : 0;
        if (stall >= opt.stall_count) {
            res.status = SeriesStatus::Diverged;
            return res;
        }
        recent_log.push_back(lt);
        if (recent_log.size() > static_cast<std::size_t>(opt.ratio_window) + 1)
            recent_log.erase(recent_log.begin());
        if (recent_log.size() == static_cast<std::size_t>(opt.ratio_window) + 1) {
            // mean log-ratio over the window = geometric extrapolation
            double mean_log_ratio = (recent_log.back() - recent_log.front()) / opt.ratio_window;
            if (mean_log_ratio < 0.0) {
                double r = std::exp(mean_log_ratio);
                double tail = term * r / (1.0 - r);
                if (tail < opt.tail_tolerance) {
                    res.status = SeriesStatus::Converged;
                    res.tail_bound = tail;
                    return res;
                }
            }
        }
    }
    res.status = SeriesStatus::Inconclusive;
    return res;
}

} // namespace detail

// R_eff between 0 and infinity of the two-sided network. The walk is
// recurrent exactly when both half-line series diverge; an unresolved
// truncation is reported as inconclusive, never guessed.
inline EffectiveResistance effective_resistance(const Environment& env,
                                                ResistanceOptions opt = {}) {
    EffectiveResistance out;
    // right series: terms prod_{x=1..z} (1-w_x)/w_x for z = 1..z_max
    {
        double acc = 0.0;
        out.right = detail::sum_series(env.z_max(), opt, [&](std::int64_t i) {
            double w = env.omega(i + 1);
            acc += std::log1p(-w) - std::log(w);
            return acc;
        });
    }
    // left series: terms prod_{x=z..0} w_x/(1-w_x) for z = 0, -1, ..., z_min
    {
        double acc = 0.0;
        out.left = detail::sum_series(-env.z_min() + 1, opt, [&](std::int64_t i) {
            double w = env.omega(-i);
            acc += std::log(w) - std::log1p(-w);
            return acc;
        });
    }

    const bool right_div = out.right.status == SeriesStatus::Diverged;
    const bool left_div = out.left.status == SeriesStatus::Diverged;
    const bool right_conv = out.right.status == SeriesStatus::Converged;
    const bool left_conv = out.left.status == SeriesStatus::Converged;

    if (right_div && left_div) {
        out.classification = WalkClass::Recurrent;
        out.value = std::numeric_limits<double>::infinity();
    } else if (right_conv || left_conv) {
        out.classification = WalkClass::Transient;
        double r_right = 1.0 + out.right.partial_sum; // includes the unit edge {0,1}
        double r_left = out.left.partial_sum;
        double adm = 0.0;
        if (right_conv) adm += 1.0 / r_right;
        if (left_conv) adm += 1.0 / r_left;
        if ((right_conv || right_div) && (left_conv || left_div))
            out.value = 1.0 / adm;
        // a converged branch next to an inconclusive one: transient is
        // certain, the value is not
    } else {
        out.classification = WalkClass::Inconclusive;
    }
    return out;
}

// ---- frozen-environment walk ----------------------------------------------

// Lazily sampled environment for walks whose range is not known in advance.
class LazyEnvironment {
public:
    LazyEnvironment(EnvironmentLaw law, std::uint64_t seed) : law_(law), seed_(seed) {}

    double omega(std::int64_t x) const {
        auto it = cache_.find(x);
        if (it != cache_.end()) return it->second;
        double w = sample_omega(law_, x, seed_);
        cache_.emplace(x, w);
        return w;
    }

private:
    EnvironmentLaw law_;
    std::uint64_t seed_;
    mutable std::unordered_map<std::int64_t, double> cache_;
};

namespace detail {

template <class OmegaFn>
Trajectory walk_markov(OmegaFn omega, NodeId start, std::uint64_t n_steps, Rng& rng,
                       bool track_visits) {
    Trajectory t;
    t.recorded = n_steps <= 1'000'000;
    t.n_steps = n_steps;
    t.walkers.resize(1);
    auto& w = t.walkers[0];
    w.start = w.final_pos = w.min_pos = w.max_pos = start;
    if (track_visits) w.visits[start] = 1;
    if (start == 0) w.last_visit_origin = 0;
    if (t.recorded) t.records.reserve(n_steps);
    NodeId x = start;
    for (std::uint64_t i = 1; i <= n_steps; ++i) {
        NodeId next = rng.uniform01() < omega(x) ? x + 1 : x - 1;
        if (t.recorded) t.records.push_back({i, 0, x, next});
        x = next;
        w.final_pos = x;
        w.min_pos = std::min(w.min_pos, x);
        w.max_pos = std::max(w.max_pos, x);
        if (track_visits) ++w.visits[x];
        if (x == 0) w.last_visit_origin = i;
    }
    return t;
}

} // namespace detail

// Markov chain with the frozen right-step probabilities. Leaving the sampled
// range is a hard error; attach a law (LazyEnvironment) when the range is
// open-ended.
inline Trajectory walk_in_environment(const Environment& env, NodeId start, std::uint64_t n_steps,
                                      Rng& rng, bool track_visits = true) {
    return detail::walk_markov(
        [&](NodeId x) {
            if (x < env.z_min() || x > env.z_max())
                throw std::range_error("walker left the sampled environment range");
            return env.omega(x);
        },
        start, n_steps, rng, track_visits);
}

inline Trajectory walk_in_environment(const LazyEnvironment& env, NodeId start,
                                      std::uint64_t n_steps, Rng& rng, bool track_visits = true) {
    return detail::walk_markov([&](NodeId x) { return env.omega(x); }, start, n_steps, rng,
                               track_visits);
}

} // namespace rwalks
