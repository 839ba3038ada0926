#pragma once

// Urn processes: the classic two-color urn with fixed increment, asymmetric
// deterministic increments, and finitely supported random replacement. Counts
// may be fractional.

#include <map>
#include <stdexcept>
#include <utility>

#include "rwalks/rng.hpp"

namespace rwalks {

// Finitely supported distribution on nonnegative integers.
struct FiniteSupportDist {
    std::map<int, double> weights; // value -> probability

    static FiniteSupportDist point(int value) {
        if (value < 0) throw std::invalid_argument("support must be nonnegative");
        return {{{value, 1.0}}};
    }

    void validate() const {
        double total = 0.0;
        for (const auto& [v, p] : weights) {
            if (v < 0 || p < 0.0) throw std::invalid_argument("invalid distribution");
            total += p;
        }
        if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("probabilities must sum to 1");
    }

    int sample(Rng& rng) const {
        double u = rng.uniform01();
        double acc = 0.0;
        for (const auto& [v, p] : weights) {
            acc += p;
            if (u < acc) return v;
        }
        return weights.rbegin()->first;
    }

    double mean() const {
        double m = 0.0;
        for (const auto& [v, p] : weights) m += v * p;
        return m;
    }

    double mass_at_zero() const {
        auto it = weights.find(0);
        return it == weights.end() ? 0.0 : it->second;
    }
};

struct ReplacementRule {
    enum class Kind { Polya, Asymmetric, Random };

    Kind kind = Kind::Polya;
    double delta_white = 1.0; // Polya uses delta_white for both colors
    double delta_black = 1.0;
    // Random: drawn ball replaced by M balls of its color (net M - 1);
    // mu governs black, nu governs white.
    FiniteSupportDist mu;
    FiniteSupportDist nu;

    static ReplacementRule polya(double delta) {
        if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
        ReplacementRule r;
        r.kind = Kind::Polya;
        r.delta_white = r.delta_black = delta;
        return r;
    }

    static ReplacementRule asymmetric(double delta_white, double delta_black) {
        if (!(delta_white > 0.0) || !(delta_black > 0.0))
            throw std::invalid_argument("deltas must be positive");
        ReplacementRule r;
        r.kind = Kind::Asymmetric;
        r.delta_white = delta_white;
        r.delta_black = delta_black;
        return r;
    }

    static ReplacementRule random(FiniteSupportDist mu_black, FiniteSupportDist nu_white) {
        mu_black.validate();
        nu_white.validate();
        ReplacementRule r;
        r.kind = Kind::Random;
        r.mu = std::move(mu_black);
        r.nu = std::move(nu_white);
        return r;
    }
};

enum class BallColor { White, Black };

struct Urn {
    double white = 1.0;
    double black = 1.0;
    ReplacementRule rule;

    Urn(double w, double b, ReplacementRule r) : white(w), black(b), rule(std::move(r)) {
        if (!(white > 0.0) || !(black > 0.0))
            throw std::invalid_argument("urn counts must be strictly positive");
    }

    double fraction_white() const { return white / (white + black); }
    double fraction_black() const { return black / (white + black); }
};

// Draw a ball with probability proportional to its count and reinforce per
// the rule. Returns the drawn color.
inline BallColor draw(Urn& urn, Rng& rng) {
    bool is_white = rng.uniform01() < urn.fraction_white();
    switch (urn.rule.kind) {
        case ReplacementRule::Kind::Polya:
        case ReplacementRule::Kind::Asymmetric:
            if (is_white) urn.white += urn.rule.delta_white;
            else urn.black += urn.rule.delta_black;
            break;
        case ReplacementRule::Kind::Random: {
            // drawn ball replaced by M of the same color: net change M - 1
            if (is_white) urn.white += urn.rule.nu.sample(rng) - 1;
            else urn.black += urn.rule.mu.sample(rng) - 1;
            if (!(urn.white > 0.0) || !(urn.black > 0.0))
                throw std::runtime_error("replacement emptied a color");
            break;
        }
    }
    return is_white ? BallColor::White : BallColor::Black;
}

// Parameters of the limiting law of the white fraction under the fixed
// increment rule: Beta(w/delta, b/delta).
inline std::pair<double, double> polya_limit_params(double white, double black, double delta) {
    if (!(white > 0.0) || !(black > 0.0) || !(delta > 0.0))
        throw std::invalid_argument("polya_limit_params needs positive arguments");
    return {white / delta, black / delta};
}

// Urn equivalent of a multiplicatively biased node with lambda = p/q and
// adjacent edge weights l0 (left) and r0 (right): white balls stand for the
// left edge, black for the right. After n draws the coupled weights are
// white/q and black/p.
inline Urn biased_node_urn(long long p, long long q, double l0, double r0) {
    if (p <= 0 || q <= 0) throw std::invalid_argument("lambda = p/q needs positive p, q");
    if (!(l0 > 0.0) || !(r0 > 0.0)) throw std::invalid_argument("initial weights must be positive");
    return Urn(static_cast<double>(q) * l0, static_cast<double>(p) * r0,
               ReplacementRule::asymmetric(2.0 * static_cast<double>(q),
                                           2.0 * static_cast<double>(p)));
}

} // namespace rwalks
