#pragma once

// Graphs the walks run on: finite segments, cycles, general bounded-degree
// graphs, and the integer line (handled lazily, never materialized).

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rwalks/rational.hpp"

namespace rwalks {

using NodeId = std::int64_t;

// Canonical undirected edge key: ordered (min, max).
struct Edge {
    NodeId a;
    NodeId b;

    Edge(NodeId u, NodeId v) : a(std::min(u, v)), b(std::max(u, v)) {}
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct DirectedEdge {
    NodeId tail; // node the edge leaves
    NodeId head; // node the edge enters

    DirectedEdge reversed() const { return {head, tail}; }
    Edge undirected() const { return Edge(tail, head); }
    friend bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
    friend auto operator<=>(const DirectedEdge&, const DirectedEdge&) = default;
};

enum class GraphKind { Segment, Cycle, IntegerLine, FiniteGeneral };

class Graph {
public:
    static Graph segment(NodeId lo, NodeId hi) {
        if (hi - lo < 1) throw std::invalid_argument("segment needs at least 2 nodes");
        std::map<NodeId, std::vector<NodeId>> adj;
        for (NodeId v = lo; v <= hi; ++v) {
            if (v > lo) adj[v].push_back(v - 1);
            if (v < hi) adj[v].push_back(v + 1);
        }
        return Graph(GraphKind::Segment, std::move(adj));
    }

    // Segment of n nodes centered on 0: nodes -(n-1)/2 .. n/2.
    static Graph centered_segment(std::int64_t n_nodes) {
        if (n_nodes < 2) throw std::invalid_argument("segment needs at least 2 nodes");
        NodeId lo = -((n_nodes - 1) / 2);
        return segment(lo, lo + n_nodes - 1);
    }

    // Nodes 1..n; the cyclic successor of x is (x mod n) + 1.
    static Graph cycle(std::int64_t n) {
        if (n < 3) throw std::invalid_argument("cycle needs at least 3 nodes");
        std::map<NodeId, std::vector<NodeId>> adj;
        for (NodeId v = 1; v <= n; ++v) {
            NodeId right = (v % n) + 1;
            NodeId left = ((v + n - 2) % n) + 1;
            adj[v] = {left, right};
        }
        Graph g(GraphKind::Cycle, std::move(adj));
        g.cycle_len_ = n;
        return g;
    }

    static Graph integer_line() {
        Graph g;
        g.kind_ = GraphKind::IntegerLine;
        g.degree_bound_ = 2;
        return g;
    }

    static Graph from_adjacency(std::map<NodeId, std::vector<NodeId>> adj) {
        return Graph(GraphKind::FiniteGeneral, std::move(adj));
    }

    // Tree in which every node has degree `degree` (leaves excepted), grown
    // out to `depth` levels from node 0.
    static Graph regular_tree(int degree, int depth) {
        if (degree < 2 || depth < 1) throw std::invalid_argument("regular_tree: degree >= 2, depth >= 1");
        std::map<NodeId, std::vector<NodeId>> adj;
        NodeId next_id = 1;
        std::vector<std::pair<NodeId, int>> frontier{{0, 0}};
        adj[0] = {};
        while (!frontier.empty()) {
            auto [v, level] = frontier.back();
            frontier.pop_back();
            if (level >= depth) continue;
            int children = (level == 0) ? degree : degree - 1;
            for (int i = 0; i < children; ++i) {
                NodeId c = next_id++;
                adj[v].push_back(c);
                adj[c].push_back(v);
                frontier.emplace_back(c, level + 1);
            }
        }
        return Graph(GraphKind::FiniteGeneral, std::move(adj));
    }

    GraphKind kind() const { return kind_; }
    bool is_finite() const { return kind_ != GraphKind::IntegerLine; }
    std::int64_t cycle_length() const { return cycle_len_; }

    std::size_t num_nodes() const {
        if (!is_finite()) throw std::logic_error("num_nodes on infinite graph");
        return adjacency_.size();
    }

    int degree_bound() const { return degree_bound_; }

    bool has_node(NodeId v) const {
        if (kind_ == GraphKind::IntegerLine) return true;
        return adjacency_.count(v) > 0;
    }

    std::vector<NodeId> neighbors(NodeId v) const {
        if (kind_ == GraphKind::IntegerLine) return {v - 1, v + 1};
        auto it = adjacency_.find(v);
        if (it == adjacency_.end()) throw std::out_of_range("node not in graph");
        return it->second;
    }

    int degree(NodeId v) const {
        if (kind_ == GraphKind::IntegerLine) return 2;
        auto it = adjacency_.find(v);
        if (it == adjacency_.end()) throw std::out_of_range("node not in graph");
        return static_cast<int>(it->second.size());
    }

    bool has_edge(NodeId u, NodeId v) const {
        if (kind_ == GraphKind::IntegerLine) return std::abs(u - v) == 1;
        auto it = adjacency_.find(u);
        if (it == adjacency_.end()) return false;
        return std::find(it->second.begin(), it->second.end(), v) != it->second.end();
    }

    const std::map<NodeId, std::vector<NodeId>>& adjacency() const {
        if (!is_finite()) throw std::logic_error("adjacency of infinite graph");
        return adjacency_;
    }

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (const auto& [v, nbrs] : adjacency())
            for (NodeId u : nbrs)
                if (v < u) out.emplace_back(v, u);
        return out;
    }

private:
    Graph() = default;

    Graph(GraphKind kind, std::map<NodeId, std::vector<NodeId>> adj)
        : kind_(kind), adjacency_(std::move(adj)) {
        validate();
    }

    void validate() {
        if (adjacency_.empty()) throw std::invalid_argument("empty graph");
        std::size_t max_deg = 0;
        for (const auto& [v, nbrs] : adjacency_) {
            max_deg = std::max(max_deg, nbrs.size());
            for (NodeId u : nbrs) {
                if (u == v) throw std::invalid_argument("self-loop");
                auto it = adjacency_.find(u);
                if (it == adjacency_.end() ||
                    std::find(it->second.begin(), it->second.end(), v) == it->second.end())
                    throw std::invalid_argument("adjacency not symmetric");
            }
        }
        degree_bound_ = static_cast<int>(max_deg);
        // connectivity
        std::set<NodeId> seen;
        std::deque<NodeId> queue{adjacency_.begin()->first};
        seen.insert(queue.front());
        while (!queue.empty()) {
            NodeId v = queue.front();
            queue.pop_front();
            for (NodeId u : adjacency_.at(v))
                if (seen.insert(u).second) queue.push_back(u);
        }
        if (seen.size() != adjacency_.size()) throw std::invalid_argument("graph not connected");
    }

    GraphKind kind_ = GraphKind::FiniteGeneral;
    std::map<NodeId, std::vector<NodeId>> adjacency_;
    int degree_bound_ = 0;
    std::int64_t cycle_len_ = 0;
};

// BFS shortest-path length; empty when unreachable.
inline std::optional<std::int64_t> distance(const Graph& g, NodeId from, NodeId to) {
    if (!g.has_node(from) || !g.has_node(to)) throw std::out_of_range("node not in graph");
    if (g.kind() == GraphKind::IntegerLine) return std::abs(from - to);
    if (from == to) return 0;
    std::map<NodeId, std::int64_t> dist{{from, 0}};
    std::deque<NodeId> queue{from};
    while (!queue.empty()) {
        NodeId v = queue.front();
        queue.pop_front();
        for (NodeId u : g.neighbors(v)) {
            if (dist.count(u)) continue;
            dist[u] = dist[v] + 1;
            if (u == to) return dist[u];
            queue.push_back(u);
        }
    }
    return std::nullopt;
}

inline std::optional<std::int64_t> distance_to_edge(const Graph& g, NodeId v, const Edge& e) {
    auto da = distance(g, v, e.a);
    auto db = distance(g, v, e.b);
    if (!da && !db) return std::nullopt;
    if (!da) return db;
    if (!db) return da;
    return std::min(*da, *db);
}

// Induced subgraph on {v : dist(center, v) <= radius}.
inline Graph ball(const Graph& g, NodeId center, std::int64_t radius) {
    if (radius < 0) throw std::invalid_argument("negative radius");
    if (!g.has_node(center)) throw std::out_of_range("center not in graph");
    std::map<NodeId, std::int64_t> dist{{center, 0}};
    std::deque<NodeId> queue{center};
    while (!queue.empty()) {
        NodeId v = queue.front();
        queue.pop_front();
        if (dist[v] == radius) continue;
        for (NodeId u : g.neighbors(v)) {
            if (dist.count(u)) continue;
            dist[u] = dist[v] + 1;
            queue.push_back(u);
        }
    }
    std::map<NodeId, std::vector<NodeId>> adj;
    for (const auto& [v, d] : dist) {
        auto& nbrs = adj[v];
        for (NodeId u : g.neighbors(v))
            if (dist.count(u)) nbrs.push_back(u);
    }
    return Graph::from_adjacency(std::move(adj));
}

namespace detail {

// min over the listed subsets of |boundary(A)| / |A|, with nodes as bitmasks.
inline Rational cheeger_scan(const std::vector<std::uint32_t>& nbr_mask,
                             std::uint32_t first, std::uint32_t last, std::uint32_t step) {
    const int n = static_cast<int>(nbr_mask.size());
    const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1u);
    Rational best(-1);
    for (std::uint32_t s = first; s != last; s += step) {
        if (s == 0 || s == full) continue;
        std::uint32_t reach = 0;
        for (int i = 0; i < n; ++i)
            if (s & (1u << i)) reach |= nbr_mask[i];
        const int boundary = __builtin_popcount(reach & ~s);
        const int size = __builtin_popcount(s);
        Rational ratio(boundary, size);
        if (best < 0 || ratio < best) best = ratio;
    }
    return best;
}

inline std::vector<std::uint32_t> neighbor_masks(const Graph& g) {
    std::vector<NodeId> nodes;
    for (const auto& [v, _] : g.adjacency()) nodes.push_back(v);
    std::map<NodeId, int> index;
    for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = static_cast<int>(i);
    std::vector<std::uint32_t> mask(nodes.size(), 0);
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (NodeId u : g.neighbors(nodes[i])) mask[i] |= 1u << index[u];
    return mask;
}

} // namespace detail

// min over nonempty proper A of |{v outside A at distance 1}| / |A|.
// Exhaustive subset scan, so only small graphs are supported.
inline Rational cheeger_constant(const Graph& g) {
    if (!g.is_finite()) throw std::invalid_argument("cheeger_constant needs a finite graph");
    const std::size_t n = g.num_nodes();
    if (n > 24) throw std::invalid_argument("cheeger_constant limited to 24 nodes");
    auto masks = detail::neighbor_masks(g);
    const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1u);
    return detail::cheeger_scan(masks, 1, full, 1);
}

} // namespace rwalks
