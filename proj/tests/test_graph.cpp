#include <catch2/catch_amalgamated.hpp>

#include "rwalks/graph.hpp"

using namespace rwalks;

namespace {

// Independent Cheeger scan: recursive inclusion/exclusion enumeration, a
// different subset order than the production bitmask loop.
Rational cheeger_oracle(const Graph& g) {
    std::vector<NodeId> nodes;
    for (const auto& [v, _] : g.adjacency()) nodes.push_back(v);
    Rational best(-1);
    std::vector<NodeId> subset;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == nodes.size()) {
            if (subset.empty() || subset.size() == nodes.size()) return;
            std::set<NodeId> in(subset.begin(), subset.end());
            std::set<NodeId> boundary;
            for (NodeId v : subset)
                for (NodeId u : g.neighbors(v))
                    if (!in.count(u)) boundary.insert(u);
            Rational ratio(static_cast<long long>(boundary.size()),
                           static_cast<long long>(subset.size()));
            if (best < 0 || ratio < best) best = ratio;
            return;
        }
        rec(i + 1); // exclusion first: reversed order relative to production
        subset.push_back(nodes[i]);
        rec(i + 1);
        subset.pop_back();
    };
    rec(0);
    return best;
}

} // namespace

TEST_CASE("segment and cycle shapes") {
    Graph seg = Graph::centered_segment(3);
    REQUIRE(seg.num_nodes() == 3);
    REQUIRE(seg.has_node(-1));
    REQUIRE(seg.has_node(1));
    REQUIRE(seg.neighbors(0) == std::vector<NodeId>{-1, 1});
    REQUIRE(seg.edges().size() == 2);

    Graph tri = Graph::cycle(3);
    REQUIRE(tri.num_nodes() == 3);
    for (NodeId v : {1, 2, 3}) REQUIRE(tri.degree(v) == 2);

    Graph line = Graph::integer_line();
    REQUIRE(line.neighbors(0) == std::vector<NodeId>{-1, 1});
    REQUIRE(line.neighbors(1000000) == std::vector<NodeId>{999999, 1000001});
}

TEST_CASE("construction rejects bad parameters") {
    REQUIRE_THROWS_AS(Graph::centered_segment(1), std::invalid_argument);
    REQUIRE_THROWS_AS(Graph::cycle(2), std::invalid_argument);
    // disconnected
    REQUIRE_THROWS_AS(Graph::from_adjacency({{0, {1}}, {1, {0}}, {5, {6}}, {6, {5}}}),
                      std::invalid_argument);
    // asymmetric
    REQUIRE_THROWS_AS(Graph::from_adjacency({{0, {1}}, {1, {}}}), std::invalid_argument);
}

TEST_CASE("distance is BFS shortest path") {
    Graph seg = Graph::segment(-2, 2);
    REQUIRE(distance(seg, -2, 2) == 4);
    REQUIRE(distance(seg, 1, 1) == 0);
    REQUIRE(distance(Graph::integer_line(), 0, -7) == 7);
    REQUIRE(distance_to_edge(Graph::integer_line(), 0, Edge(3, 4)) == 3);
    REQUIRE(distance_to_edge(seg, 0, Edge(-2, -1)) == 1);
}

TEST_CASE("ball induces the right subgraph") {
    Graph b = ball(Graph::integer_line(), 0, 2);
    REQUIRE(b.num_nodes() == 5);
    REQUIRE(b.has_edge(-2, -1));
    REQUIRE_FALSE(b.has_node(3));

    Graph tri = Graph::cycle(3);
    REQUIRE(ball(tri, 1, 1).num_nodes() == 3); // diameter 1

    Graph tree = Graph::regular_tree(4, 3);
    Graph star = ball(tree, 0, 1);
    REQUIRE(star.num_nodes() == 5);
    REQUIRE(star.degree(0) == 4);

    // ball contains exactly the nodes within the radius
    Graph b3 = ball(tree, 0, 2);
    for (const auto& [v, _] : b3.adjacency()) REQUIRE(*distance(tree, 0, v) <= 2);
    std::size_t count = 0;
    for (const auto& [v, _] : tree.adjacency())
        if (*distance(tree, 0, v) <= 2) ++count;
    REQUIRE(b3.num_nodes() == count);
}

TEST_CASE("cheeger constant on known graphs") {
    REQUIRE(cheeger_constant(Graph::centered_segment(3)) == Rational(1, 2));
    // single edge: both subsets are singletons with ratio 1
    REQUIRE(cheeger_constant(Graph::segment(0, 1)) == Rational(1));
    // complete graph on 4 nodes: minimized at |A| = 3
    std::map<NodeId, std::vector<NodeId>> k4;
    for (NodeId i = 0; i < 4; ++i)
        for (NodeId j = 0; j < 4; ++j)
            if (i != j) k4[i].push_back(j);
    REQUIRE(cheeger_constant(Graph::from_adjacency(k4)) == Rational(1, 3));
}

TEST_CASE("cheeger constant agrees with an independent enumeration") {
    std::vector<Graph> graphs;
    graphs.push_back(Graph::centered_segment(5));
    graphs.push_back(Graph::cycle(6));
    graphs.push_back(Graph::regular_tree(3, 2));
    graphs.push_back(ball(Graph::integer_line(), 0, 4));
    for (const auto& g : graphs) REQUIRE(cheeger_constant(g) == cheeger_oracle(g));
}

TEST_CASE("cheeger rejects oversized graphs") {
    REQUIRE_THROWS_AS(cheeger_constant(Graph::segment(0, 30)), std::invalid_argument);
}
