#pragma once

// Estimators and verification harnesses: the meeting-time law, martingale
// drift tests, ensemble speed / last-visit tables, the conductance decay
// probe, and the weight-fraction histogram with its Beta fit.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "rwalks/dynamics.hpp"
#include "rwalks/estimators.hpp"
#include "rwalks/parallel.hpp"
#include "rwalks/rng.hpp"
#include "rwalks/trajectory.hpp"

namespace rwalks {

struct MeanEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;
};

inline MeanEstimate mean_and_se(const std::vector<double>& xs) {
    if (xs.empty()) return {};
    double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    if (xs.size() == 1) return {mean, 0.0, 1};
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    double var = ss / static_cast<double>(xs.size() - 1);
    return {mean, std::sqrt(var / static_cast<double>(xs.size())), xs.size()};
}

// ---- meeting times ---------------------------------------------------------

struct MeetingTimeHistogram {
    std::map<std::uint64_t, std::uint64_t> gap_counts;
    std::uint64_t total_gaps = 0;
    double mean_gap = 0.0;

    double probability(std::uint64_t gap) const {
        auto it = gap_counts.find(gap);
        return it == gap_counts.end() || total_gaps == 0
                   ? 0.0
                   : static_cast<double>(it->second) / static_cast<double>(total_gaps);
    }
};

// Gaps between successive joint visits to the center, pooled over episodes.
inline MeetingTimeHistogram meeting_time_histogram(const std::vector<Trajectory>& episodes) {
    MeetingTimeHistogram h;
    double sum = 0.0;
    for (const auto& t : episodes) {
        auto taus = center_meeting_times(t);
        for (std::size_t i = 1; i < taus.size(); ++i) {
            std::uint64_t gap = taus[i] - taus[i - 1];
            ++h.gap_counts[gap];
            ++h.total_gaps;
            sum += static_cast<double>(gap);
        }
    }
    h.mean_gap = h.total_gaps == 0 ? 0.0 : sum / static_cast<double>(h.total_gaps);
    return h;
}

// ---- two-player episodes -----------------------------------------------------

struct TwoPlayerRun {
    std::vector<std::uint64_t> meeting_times; // joint center times, starts at 0
    std::vector<double> fractions;            // left weight fraction at those times
    double final_fraction = 0.0;
    std::uint64_t steps = 0;
};

// Two walkers on the 3-node segment with initial edge weights a (left) and
// b (right) and unit increments. Runs until `target_meetings` joint center
// visits (after time 0) or until `max_steps`, whichever comes first.
inline TwoPlayerRun run_two_player(Scheduler sched, double a, double b,
                                   std::uint64_t target_meetings, std::uint64_t max_steps,
                                   Rng& rng) {
    WalkerSystem sys(Graph::centered_segment(3), ReinforcementScheme::linear(1.0, 1.0),
                     sched, BiasRule::none(), std::vector<NodeId>(
                         static_cast<std::size_t>(sched.num_walkers), 0));
    sys.weights().set_initial_weights([a, b](const Edge& e) { return e.a == -1 ? a : b; });
    const Edge left(-1, 0), right(0, 1);
    auto fraction = [&] {
        double wl = sys.weights().weight(left);
        double wr = sys.weights().weight(right);
        return wl / (wl + wr);
    };
    TwoPlayerRun out;
    out.meeting_times.push_back(0);
    out.fractions.push_back(fraction());
    std::uint64_t meetings = 0;
    while (out.steps < max_steps && meetings < target_meetings) {
        sys.step(rng);
        ++out.steps;
        bool all_center = true;
        for (NodeId p : sys.positions()) all_center = all_center && p == 0;
        if (all_center) {
            ++meetings;
            out.meeting_times.push_back(out.steps);
            out.fractions.push_back(fraction());
        }
    }
    out.final_fraction = fraction();
    return out;
}

// ---- martingale drift ------------------------------------------------------

// Mean one-step difference of a fraction series observed at stopping times.
inline MeanEstimate martingale_drift(const std::vector<double>& series) {
    if (series.size() < 101)
        throw std::invalid_argument("martingale_drift needs at least 100 increments");
    std::vector<double> diffs;
    diffs.reserve(series.size() - 1);
    for (std::size_t i = 1; i < series.size(); ++i) {
        if (series[i] < 0.0 || series[i] > 1.0)
            throw std::invalid_argument("fractions must lie in [0,1]");
        diffs.push_back(series[i] - series[i - 1]);
    }
    return mean_and_se(diffs);
}

// ---- distribution comparisons ----------------------------------------------

inline double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("no samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double f = cdf(samples[i]);
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    }
    return d;
}

inline double beta_cdf(double alpha, double beta, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return boost::math::ibeta(alpha, beta, x);
}

// Beta parameters matched to the sample mean and variance.
inline std::pair<double, double> beta_fit_moments(const std::vector<double>& samples) {
    auto est = mean_and_se(samples);
    double m = est.mean;
    double var = est.std_error * est.std_error * static_cast<double>(samples.size());
    if (var <= 0.0 || m <= 0.0 || m >= 1.0)
        throw std::runtime_error("degenerate sample for Beta fit");
    double common = m * (1.0 - m) / var - 1.0;
    if (common <= 0.0) throw std::runtime_error("sample variance too large for a Beta fit");
    return {m * common, (1.0 - m) * common};
}

struct FractionHistogram {
    std::vector<std::uint64_t> bins;
    double bin_width = 0.0;
    double mean = 0.0;
    double std_error = 0.0;
    double fit_alpha = 0.0;
    double fit_beta = 0.0;
    double ks_best_fit = 0.0; // evidence only, never asserted
};

// Histogram of limit-fraction samples plus a moment-matched Beta fit and the
// KS distance against it.
inline FractionHistogram limit_fraction_histogram(const std::vector<double>& samples,
                                                  std::size_t n_bins = 40) {
    if (samples.empty()) throw std::invalid_argument("no samples");
    FractionHistogram out;
    out.bins.assign(n_bins, 0);
    out.bin_width = 1.0 / static_cast<double>(n_bins);
    for (double s : samples) {
        auto b = std::min<std::size_t>(n_bins - 1,
                                       static_cast<std::size_t>(s * static_cast<double>(n_bins)));
        ++out.bins[b];
    }
    auto est = mean_and_se(samples);
    out.mean = est.mean;
    out.std_error = est.std_error;
    auto [alpha, beta] = beta_fit_moments(samples);
    out.fit_alpha = alpha;
    out.fit_beta = beta;
    out.ks_best_fit =
        ks_distance(samples, [&](double x) { return beta_cdf(alpha, beta, x); });
    return out;
}

// ---- ensemble tables --------------------------------------------------------

struct EnsembleCell {
    double lambda = 0.0;
    std::uint64_t replicates = 0;
    std::uint64_t steps = 0;
    MeanEstimate speed;
    MeanEstimate last_visit_fraction;
};

struct EnsembleReplicate {
    double speed = 0.0;
    double last_visit_fraction = 0.0;
};

// One biased-walk replicate on the integer line: speed = final position /
// steps, plus the relative time of the last visit to the root.
inline EnsembleReplicate line_walk_replicate(BiasRule bias, std::uint64_t steps, Rng rng) {
    WalkerSystem sys(Graph::integer_line(), ReinforcementScheme::linear(1.0, 1.0),
                     Scheduler::single(), bias, {0});
    Trajectory t = run(sys, steps, rng, {.record_steps = false, .track_visits = false});
    const auto& w = t.walkers[0];
    double speed = static_cast<double>(w.final_pos) / static_cast<double>(steps);
    double lastvis = w.last_visit_origin
                         ? static_cast<double>(*w.last_visit_origin) / static_cast<double>(steps)
                         : 0.0;
    return {speed, lastvis};
}

// Mean speed and last-visit fraction over a lambda grid; deterministic in the
// master seed, independent of the worker count.
inline std::vector<EnsembleCell> ensemble_table(BiasRule::Kind kind,
                                                const std::vector<double>& lambdas,
                                                std::uint64_t replicates, std::uint64_t steps,
                                                std::uint64_t master_seed, unsigned workers) {
    std::vector<EnsembleCell> table;
    for (double lambda : lambdas) {
        BiasRule bias = kind == BiasRule::Kind::Multiplicative ? BiasRule::multiplicative(lambda)
                                                               : BiasRule::additive(lambda);
        std::uint64_t lambda_tag = static_cast<std::uint64_t>(std::llround(lambda * 1e6));
        auto reps = parallel_replicates<EnsembleReplicate>(
            replicates, workers, [&](std::uint64_t i) {
                Rng rng = derive_stream(master_seed, "ensemble", lambda_tag * 1'000'003 + i);
                return line_walk_replicate(bias, steps, rng);
            });
        std::vector<double> speeds, lastvis;
        for (const auto& r : reps) {
            speeds.push_back(r.speed);
            lastvis.push_back(r.last_visit_fraction);
        }
        table.push_back({lambda, replicates, steps, mean_and_se(speeds), mean_and_se(lastvis)});
    }
    return table;
}

// ---- conductance decay probe -------------------------------------------------

struct DecayProbeResult {
    std::vector<double> mean_by_distance; // mean estimated c_e^s per distance
    double slope = 0.0;                   // least-squares slope of log(mean) vs distance
    double ci_low = 0.0;                  // bootstrap percentile interval
    double ci_high = 0.0;
    std::uint64_t replicates = 0;
};

namespace detail {

inline double slope_of(const std::vector<double>& log_means) {
    // least squares against distance 0,1,2,...
    double n = static_cast<double>(log_means.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t d = 0; d < log_means.size(); ++d) {
        double x = static_cast<double>(d);
        sx += x;
        sy += log_means[d];
        sxx += x * x;
        sxy += x * log_means[d];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace detail

// Reinforced walk on the radius-R ball around 0 in the segment; per edge at
// distance d, estimate c_e^s as exp(s * sum log Q) along the first-entrance
// path; fit the decay of log(mean) in d and bootstrap the slope.
inline DecayProbeResult decay_probe(double a, double s, std::int64_t radius,
                                    std::uint64_t replicates, std::uint64_t master_seed,
                                    unsigned workers, std::uint64_t step_cap = 2'000'000) {
    if (!(s > 0.0 && s < 0.25)) throw std::invalid_argument("s must lie in (0, 1/4)");
    if (radius < 0) throw std::invalid_argument("negative radius");
    DecayProbeResult out;
    out.replicates = replicates;
    if (radius == 0 || replicates == 0) return out; // empty probe

    Graph g = ball(Graph::integer_line(), 0, radius);
    const std::size_t n_dist = static_cast<std::size_t>(radius);

    // per replicate: mean estimate per distance d = 0..radius-1
    auto per_rep = parallel_replicates<std::vector<double>>(
        replicates, workers, [&](std::uint64_t rep) {
            Rng rng = derive_stream(master_seed, "decay-probe", rep);
            WalkerSystem sys(g, ReinforcementScheme::linear(a, 1.0), Scheduler::single(),
                             BiasRule::none(), {0});
            // run until every directed edge of the ball has been crossed
            std::vector<StepRecord> records;
            std::map<DirectedEdge, bool> need;
            for (const auto& e : g.edges()) {
                need[{e.a, e.b}] = true;
                need[{e.b, e.a}] = true;
            }
            std::size_t missing = need.size();
            std::uint64_t steps = 0;
            while (missing > 0) {
                if (++steps > step_cap) throw std::runtime_error("decay probe exceeded step cap");
                StepRecord r = sys.step(rng);
                records.push_back(r);
                auto it = need.find({r.from, r.to});
                if (it != need.end() && it->second) {
                    it->second = false;
                    --missing;
                }
            }
            Trajectory traj = trajectory_from_records({0}, std::move(records));
            auto est = conductance_ratio_estimates(traj, 0);
            std::vector<double> sums(n_dist, 0.0);
            std::vector<std::uint64_t> counts(n_dist, 0);
            for (const auto& [e, _] : est.estimates) {
                auto d = distance_to_edge(g, 0, e.undirected());
                if (!d || static_cast<std::size_t>(*d) >= n_dist) continue;
                auto lp = est.log_ratio_product(e, 0);
                if (!lp) continue;
                sums[static_cast<std::size_t>(*d)] += std::exp(s * *lp);
                ++counts[static_cast<std::size_t>(*d)];
            }
            std::vector<double> means(n_dist, 0.0);
            for (std::size_t d = 0; d < n_dist; ++d)
                means[d] = counts[d] ? sums[d] / static_cast<double>(counts[d]) : 0.0;
            return means;
        });

    std::vector<double> log_means(n_dist, 0.0);
    for (std::size_t d = 0; d < n_dist; ++d) {
        double m = 0.0;
        for (const auto& rep : per_rep) m += rep[d];
        m /= static_cast<double>(replicates);
        out.mean_by_distance.push_back(m);
        log_means[d] = std::log(std::max(m, 1e-300));
    }
    out.slope = detail::slope_of(log_means);

    // bootstrap over replicates
    constexpr int kResamples = 1000;
    std::vector<double> slopes;
    slopes.reserve(kResamples);
    Rng boot = derive_stream(master_seed, "decay-bootstrap", 0);
    for (int b = 0; b < kResamples; ++b) {
        std::vector<double> acc(n_dist, 0.0);
        for (std::uint64_t i = 0; i < replicates; ++i) {
            const auto& rep = per_rep[boot.below(replicates)];
            for (std::size_t d = 0; d < n_dist; ++d) acc[d] += rep[d];
        }
        std::vector<double> lm(n_dist);
        for (std::size_t d = 0; d < n_dist; ++d)
            lm[d] = std::log(std::max(acc[d] / static_cast<double>(replicates), 1e-300));
        slopes.push_back(detail::slope_of(lm));
    }
    std::sort(slopes.begin(), slopes.end());
    out.ci_low = slopes[static_cast<std::size_t>(0.025 * kResamples)];
    out.ci_high = slopes[static_cast<std::size_t>(0.975 * kResamples) - 1];
    return out;
}

} // namespace rwalks
