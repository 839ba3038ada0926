#pragma once

// Edge and vertex weight state shared by all walk dynamics. Weights are not
// stored: they are recomputed from traversal counts through the scheme, so an
// edge absent from the count map has weight equal to its initial value. That
// keeps walks on the integer line at O(visited) memory.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "rwalks/graph.hpp"

namespace rwalks {

struct ReinforcementScheme {
    enum class Kind { Linear, Tabulated, None };

    Kind kind = Kind::Linear;
    double initial = 1.0;   // uniform a
    double increment = 1.0; // Linear only
    std::vector<double> table; // Tabulated: W(0), W(1), ...; clamped at the end

    static ReinforcementScheme linear(double a, double delta = 1.0) {
        if (a <= 0.0 || delta <= 0.0) throw std::invalid_argument("linear scheme needs a > 0, delta > 0");
        return {Kind::Linear, a, delta, {}};
    }

    static ReinforcementScheme none(double a = 1.0) {
        if (a <= 0.0) throw std::invalid_argument("initial weight must be positive");
        return {Kind::None, a, 0.0, {}};
    }

    static ReinforcementScheme tabulated(std::vector<double> values) {
        if (values.empty()) throw std::invalid_argument("empty weight table");
        double prev = 0.0;
        for (double w : values) {
            if (w <= 0.0) throw std::invalid_argument("weights must be positive");
            if (w < prev) throw std::invalid_argument("weight table must be monotone");
            prev = w;
        }
        ReinforcementScheme s{Kind::Tabulated, values.front(), 0.0, std::move(values)};
        return s;
    }

    // W_e(k) with the edge's initial value substituted for the uniform a.
    double weight_after(std::uint64_t traversals, double edge_initial) const {
        switch (kind) {
            case Kind::Linear: return edge_initial + increment * static_cast<double>(traversals);
            case Kind::None: return edge_initial;
            case Kind::Tabulated: {
                std::size_t k = std::min<std::size_t>(traversals, table.size() - 1);
                return table[k];
            }
        }
        return edge_initial;
    }
};

struct EdgeHash {
    std::size_t operator()(const Edge& e) const {
        std::uint64_t h = static_cast<std::uint64_t>(e.a) * 0x9e3779b97f4a7c15ULL;
        h ^= static_cast<std::uint64_t>(e.b) + 0x517cc1b727220a95ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

class WeightState {
public:
    explicit WeightState(ReinforcementScheme scheme) : scheme_(std::move(scheme)) {
        counts_.reserve(1 << 10);
    }

    // Per-edge initial weights, e.g. lambda^z on the edge {z, z+1}. An empty
    // function means the scheme's uniform initial value applies everywhere.
    void set_initial_weights(std::function<double(const Edge&)> f) { initial_override_ = std::move(f); }

    std::uint64_t clock() const { return clock_; }

    std::uint64_t undirected_count(const Edge& e) const {
        auto it = counts_.find(e);
        return it == counts_.end() ? 0 : it->second.forward + it->second.backward;
    }

    std::uint64_t directed_count(const DirectedEdge& e) const {
        auto it = counts_.find(e.undirected());
        if (it == counts_.end()) return 0;
        return e.tail < e.head ? it->second.forward : it->second.backward;
    }

    double initial_weight(const Edge& e) const {
        return initial_override_ ? initial_override_(e) : scheme_.initial;
    }

    double weight(const Edge& e) const {
        double w = scheme_.weight_after(undirected_count(e), initial_weight(e));
        if (!(w > 0.0)) throw std::runtime_error("edge weight not positive");
        return w;
    }

    void record_traversal(const DirectedEdge& e) {
        auto& c = counts_[e.undirected()];
        if (e.tail < e.head) ++c.forward; else ++c.backward;
        ++clock_;
    }

    const ReinforcementScheme& scheme() const { return scheme_; }

    // Visits every counted edge; used by invariant checks and summaries.
    template <class F>
    void for_each_counted_edge(F&& f) const {
        for (const auto& [edge, c] : counts_) f(edge, c.forward, c.backward);
    }

private:
    struct Counts {
        std::uint64_t forward = 0;  // tail < head direction
        std::uint64_t backward = 0;
    };

    ReinforcementScheme scheme_;
    std::function<double(const Edge&)> initial_override_;
    std::unordered_map<Edge, Counts, EdgeHash> counts_;
    std::uint64_t clock_ = 0;
};

class VertexWeightState {
public:
    explicit VertexWeightState(ReinforcementScheme scheme) : scheme_(std::move(scheme)) {}

    // Initial occupancy counts as one visit.
    void record_initial_position(NodeId v) { ++visits_[v]; ++initial_recorded_; }

    std::uint64_t clock() const { return clock_; }
    std::uint64_t visit_count(NodeId v) const {
        auto it = visits_.find(v);
        return it == visits_.end() ? 0 : it->second;
    }

    double weight(NodeId v) const {
        double w = scheme_.weight_after(visit_count(v), scheme_.initial);
        if (!(w > 0.0)) throw std::runtime_error("vertex weight not positive");
        return w;
    }

    void record_visit(NodeId v) {
        ++visits_[v];
        ++clock_;
    }

    std::uint64_t total_visits() const {
        std::uint64_t s = 0;
        for (const auto& [v, c] : visits_) s += c;
        return s;
    }

    std::uint64_t initial_recorded() const { return initial_recorded_; }

private:
    ReinforcementScheme scheme_;
    std::unordered_map<NodeId, std::uint64_t> visits_;
    std::uint64_t clock_ = 0;
    std::uint64_t initial_recorded_ = 0;
};

} // namespace rwalks
