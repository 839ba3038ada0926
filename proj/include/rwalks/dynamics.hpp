#pragma once

// Step engines: single- and multi-walker edge-reinforced walks, the
// vertex-reinforced walk, and the multiplicative / additive bias variants on
// oriented line-like graphs.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rwalks/graph.hpp"
#include "rwalks/reinforcement.hpp"
#include "rwalks/rng.hpp"
#include "rwalks/trajectory.hpp"

namespace rwalks {

struct BiasRule {
    enum class Kind { NoBias, Multiplicative, Additive };

    Kind kind = Kind::NoBias;
    double lambda = 1.0;

    static BiasRule none() { return {Kind::NoBias, 1.0}; }

    static BiasRule multiplicative(double lambda) {
        if (!(lambda > 0.0)) throw std::invalid_argument("multiplicative bias needs lambda > 0");
        return {Kind::Multiplicative, lambda};
    }

    static BiasRule additive(double lambda) {
        if (!(lambda >= 0.0)) throw std::invalid_argument("additive bias needs lambda >= 0");
        return {Kind::Additive, lambda};
    }
};

struct Scheduler {
    enum class Kind { Single, UniformRandom, Alternating };

    Kind kind = Kind::Single;
    int num_walkers = 1;

    static Scheduler single() { return {Kind::Single, 1}; }

    static Scheduler uniform_random(int k) {
        if (k < 1) throw std::invalid_argument("need at least one walker");
        return {Kind::UniformRandom, k};
    }

    static Scheduler alternating() { return {Kind::Alternating, 2}; }
};

// Directed-line helpers. "Right" on the integer line and on segments is +1;
// on a cycle it is the cyclic successor. The biased walks are defined only on
// these oriented graphs.
inline bool is_line_like(const Graph& g) {
    return g.kind() == GraphKind::IntegerLine || g.kind() == GraphKind::Segment;
}

class WalkerSystem {
public:
    WalkerSystem(Graph graph, ReinforcementScheme scheme, Scheduler sched, BiasRule bias,
                 std::vector<NodeId> starts)
        : graph_(std::move(graph)),
          edge_weights_(std::move(scheme)),
          scheduler_(sched),
          bias_(bias),
          positions_(std::move(starts)) {
        validate_setup();
    }

    static WalkerSystem vrrw(Graph graph, ReinforcementScheme vertex_scheme,
                             Scheduler sched, std::vector<NodeId> starts) {
        WalkerSystem sys(std::move(graph), ReinforcementScheme::none(), sched, BiasRule::none(),
                         std::move(starts));
        sys.vertex_weights_.emplace(std::move(vertex_scheme));
        for (NodeId v : sys.positions_) sys.vertex_weights_->record_initial_position(v);
        return sys;
    }

    const Graph& graph() const { return graph_; }
    WeightState& weights() { return edge_weights_; }
    const WeightState& weights() const { return edge_weights_; }
    VertexWeightState& vertex_weights() { return vertex_weights_.value(); }
    bool is_vrrw() const { return vertex_weights_.has_value(); }
    const std::vector<NodeId>& positions() const { return positions_; }
    std::uint64_t clock() const { return clock_; }
    const Scheduler& scheduler() const { return scheduler_; }
    const BiasRule& bias() const { return bias_; }

    // One-step transition distribution for the given walker in its current
    // state. Probabilities sum to 1.
    std::vector<std::pair<NodeId, double>> transition_probabilities(int walker) const {
        NodeId u = positions_.at(walker);
        auto nbrs = graph_.neighbors(u);
        if (nbrs.empty()) throw std::runtime_error("isolated node");
        std::vector<std::pair<NodeId, double>> out;
        out.reserve(nbrs.size());
        if (is_vrrw()) {
            double total = 0.0;
            for (NodeId t : nbrs) total += vertex_weights_->weight(t);
            for (NodeId t : nbrs) out.emplace_back(t, vertex_weights_->weight(t) / total);
            return out;
        }
        if (bias_.kind == BiasRule::Kind::NoBias) {
            double total = 0.0;
            for (NodeId t : nbrs) total += edge_weights_.weight(Edge(u, t));
            for (NodeId t : nbrs) out.emplace_back(t, edge_weights_.weight(Edge(u, t)) / total);
            return out;
        }
        // biased rules: oriented graphs only
        NodeId right, left;
        oriented_neighbors(u, left, right);
        bool has_left = graph_.has_edge(u, left);
        bool has_right = graph_.has_edge(u, right);
        if (!has_left) { out.emplace_back(right, 1.0); return out; }
        if (!has_right) { out.emplace_back(left, 1.0); return out; }
        double wl = edge_weights_.weight(Edge(u, left));
        double wr = edge_weights_.weight(Edge(u, right));
        double pr;
        if (bias_.kind == BiasRule::Kind::Multiplicative) {
            pr = bias_.lambda * wr / (wl + bias_.lambda * wr);
        } else {
            pr = (bias_.lambda + wr) / (bias_.lambda + wr + wl);
        }
        out.emplace_back(right, pr);
        out.emplace_back(left, 1.0 - pr);
        return out;
    }

    // Advance the system by one step: pick a walker per the scheduler, move it
    // per the bias rule, reinforce. The walker-selection coin is consumed on
    // every uniform-random step even when the outcome is symmetric.
    StepRecord step(Rng& rng) {
        int walker = pick_walker(rng);
        NodeId from = positions_[walker];
        NodeId to = sample_move(walker, rng);
        if (is_vrrw()) {
            vertex_weights_->record_visit(to);
        } else {
            edge_weights_.record_traversal({from, to});
        }
        positions_[walker] = to;
        ++clock_;
        return StepRecord{clock_, walker, from, to};
    }

private:
    void validate_setup() {
        if (static_cast<int>(positions_.size()) != scheduler_.num_walkers)
            throw std::invalid_argument("walker count does not match scheduler");
        for (NodeId v : positions_)
            if (!graph_.has_node(v)) throw std::invalid_argument("start node not in graph");
        if (bias_.kind != BiasRule::Kind::NoBias && !is_line_like(graph_) &&
            graph_.kind() != GraphKind::Cycle)
            throw std::invalid_argument("biased walks need a line or cycle graph");
    }

    void oriented_neighbors(NodeId u, NodeId& left, NodeId& right) const {
        if (graph_.kind() == GraphKind::Cycle) {
            std::int64_t n = graph_.cycle_length();
            right = (u % n) + 1;
            left = ((u + n - 2) % n) + 1;
        } else {
            right = u + 1;
            left = u - 1;
        }
    }

    int pick_walker(Rng& rng) {
        switch (scheduler_.kind) {
            case Scheduler::Kind::Single: return 0;
            case Scheduler::Kind::UniformRandom:
                return static_cast<int>(rng.below(scheduler_.num_walkers));
            case Scheduler::Kind::Alternating:
                // walker 1 moves at odd steps, walker 2 at even steps
                return static_cast<int>(clock_ % 2);
        }
        return 0;
    }

    NodeId sample_move(int walker, Rng& rng) {
        auto probs = transition_probabilities(walker);
        if (probs.size() == 1) return probs[0].first; // forced, no coin consumed
        double u = rng.uniform01();
        double acc = 0.0;
        for (const auto& [node, p] : probs) {
            acc += p;
            if (u < acc) return node;
        }
        return probs.back().first;
    }

    Graph graph_;
    WeightState edge_weights_;
    std::optional<VertexWeightState> vertex_weights_;
    Scheduler scheduler_;
    BiasRule bias_;
    std::vector<NodeId> positions_;
    std::uint64_t clock_ = 0;
};

constexpr std::uint64_t kStreamingThreshold = 10'000'000;

struct RunOptions {
    std::optional<bool> record_steps; // default: record iff n_steps <= threshold
    bool track_visits = true;         // per-node occupancy counts in summaries
};

// Drive a system for n_steps. Identical (system config, rng stream) inputs
// reproduce identical trajectories bit for bit.
inline Trajectory run(WalkerSystem& sys, std::uint64_t n_steps, Rng& rng, RunOptions opt = {}) {
    bool record = opt.record_steps.value_or(n_steps <= kStreamingThreshold);
    Trajectory t;
    t.recorded = record;
    t.n_steps = n_steps;
    t.walkers.resize(sys.positions().size());
    for (std::size_t m = 0; m < sys.positions().size(); ++m) {
        auto& w = t.walkers[m];
        w.start = w.final_pos = w.min_pos = w.max_pos = sys.positions()[m];
        if (opt.track_visits) w.visits[w.start] = 1;
        if (w.start == 0) w.last_visit_origin = 0;
    }
    if (record) t.records.reserve(n_steps);
    for (std::uint64_t i = 0; i < n_steps; ++i) {
        StepRecord r = sys.step(rng);
        auto& w = t.walkers[r.walker];
        w.final_pos = r.to;
        w.min_pos = std::min(w.min_pos, r.to);
        w.max_pos = std::max(w.max_pos, r.to);
        if (opt.track_visits) ++w.visits[r.to];
        if (r.to == 0) w.last_visit_origin = r.step;
        if (record) t.records.push_back(r);
    }
    return t;
}

} // namespace rwalks
