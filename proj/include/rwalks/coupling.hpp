#pragma once

// Coupled construction of the linearly reinforced walk against two Bernoulli
// families, verifying that the ratio estimate Q along a fixed path gamma is
// dominated by the Bernoulli surrogate Q-bar whenever the first-entrance
// event D_gamma occurs:
//
//   P[Y_j  = 1] = a / (j + 1 + 2a)        (caps exits along the path edge)
//   P[Y'_j = 1] = (1 + a) / (2j + 1 + Ka) (floors exits along the back edge)
//
// At every interior path vertex the walk consumes these variables exactly as
// the case table prescribes: Y'_0 decides the branch on the first visit, the
// Y' branch consumes one variable per visit until the back edge is used, the
// Y branch consumes one variable per use of the two tracked edges until the
// path edge is used. The walk steps normally whenever the vertex is off the
// path, D_gamma is already violated, or the local estimate is resolved. Any
// state outside this table is a hard error, not a fallback.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "rwalks/graph.hpp"
#include "rwalks/reinforcement.hpp"
#include "rwalks/rng.hpp"

namespace rwalks {

struct CouplingCheckResult {
    std::uint64_t episodes = 0;
    std::uint64_t episodes_dgamma = 0; // episodes on which D_gamma occurred
    std::uint64_t dominated = 0;       // Q <= Q-bar on every interior edge
    // first consistent visit to the first interior vertex: exits along the
    // back edge vs. total (for the Y'_0 marginal check)
    std::uint64_t first_visit_back_exits = 0;
    std::uint64_t first_visit_total = 0;

    double domination_fraction() const {
        return episodes_dgamma == 0
                   ? 0.0
                   : static_cast<double>(dominated) / static_cast<double>(episodes_dgamma);
    }
};

struct CouplingOptions {
    std::uint64_t step_cap = 4'000'000; // per episode; exceeding it is an error
};

namespace detail {

struct CoupledVertex {
    enum class Phase { Untouched, BackBranch, PathBranch, Free };

    DirectedEdge path_edge; // f, the gamma edge out of this vertex
    DirectedEdge back_edge; // e, reversal of the gamma edge into this vertex
    Phase phase = Phase::Untouched;
    bool first_y_prime = false;    // value of Y'_0 once drawn
    std::uint64_t visits = 0;      // arrivals at the vertex
    std::uint64_t fe_uses = 0;     // departures along f or e (path branch)
    std::vector<char> y;           // sampled Y_j, grown lazily
    std::vector<char> y_prime;     // sampled Y'_j, grown lazily
    std::optional<double> q;       // frozen once both tracked edges crossed
};

} // namespace detail

// Run `episodes` coupled walks on `graph`, starting at gamma's first tail,
// with uniform initial weight `a`, unit increments, and degree bound
// K >= max degree along gamma. Episodes where D_gamma fails are excluded
// from the denominator.
inline CouplingCheckResult coupling_domination_check(const Graph& graph,
                                                     const std::vector<DirectedEdge>& gamma,
                                                     double a, int K, std::uint64_t episodes,
                                                     std::uint64_t seed,
                                                     CouplingOptions opt = {}) {
    if (gamma.size() < 2) throw std::invalid_argument("gamma needs at least 2 edges");
    if (!(a > 0.0)) throw std::invalid_argument("a must be positive");
    const NodeId v0 = gamma.front().tail;
    {
        std::set<NodeId> nodes{v0};
        NodeId cur = v0;
        for (const auto& g : gamma) {
            if (g.tail != cur) throw std::invalid_argument("gamma edges must chain");
            if (!graph.has_edge(g.tail, g.head))
                throw std::invalid_argument("gamma edge not in graph");
            if (!nodes.insert(g.head).second)
                throw std::invalid_argument("gamma must be a simple path");
            cur = g.head;
        }
        for (NodeId v : nodes)
            if (graph.degree(v) > K)
                throw std::invalid_argument("degree bound K too small for gamma");
    }

    const double bern_y = 2.0 * a;                    // P[Y_j=1]  = a/(j+1+bern_y... )
    const double bern_yp = static_cast<double>(K) * a; // P[Y'_j=1] = (1+a)/(2j+1+bern_yp)

    auto y_value = [&](detail::CoupledVertex& cv, std::size_t j, Rng& rng) -> bool {
        while (cv.y.size() <= j) {
            double p = a / (static_cast<double>(cv.y.size()) + 1.0 + bern_y);
            cv.y.push_back(rng.bernoulli(p) ? 1 : 0);
        }
        return cv.y[j] != 0;
    };
    auto y_prime_value = [&](detail::CoupledVertex& cv, std::size_t j, Rng& rng) -> bool {
        while (cv.y_prime.size() <= j) {
            double p = (1.0 + a) / (2.0 * static_cast<double>(cv.y_prime.size()) + 1.0 + bern_yp);
            cv.y_prime.push_back(rng.bernoulli(p) ? 1 : 0);
        }
        return cv.y_prime[j] != 0;
    };

    CouplingCheckResult result;
    result.episodes = episodes;

    for (std::uint64_t ep = 0; ep < episodes; ++ep) {
        Rng rng = derive_stream(seed, "coupling", ep);
        WeightState weights(ReinforcementScheme::linear(a, 1.0));

        std::vector<detail::CoupledVertex> coupled;
        std::map<NodeId, std::size_t> coupled_index;
        for (std::size_t i = 1; i < gamma.size(); ++i) {
            coupled_index[gamma[i].tail] = coupled.size();
            coupled.push_back({gamma[i], gamma[i - 1].reversed()});
        }

        std::map<DirectedEdge, std::uint64_t> cross_count;
        std::set<DirectedEdge> crossed;
        std::set<NodeId> visited{v0};
        bool violated = false;
        bool counted_first_visit_stat = false;

        auto all_resolved = [&]() {
            for (const auto& cv : coupled)
                if (!cv.q) return false;
            return true;
        };

        // Record a traversal; maintain the D_gamma consistency flags and
        // freeze Q at the vertex whose tracked pair just completed.
        auto move_along = [&](NodeId from, NodeId to) {
            DirectedEdge e{from, to};
            weights.record_traversal(e);
            bool first_time = crossed.insert(e).second;
            ++cross_count[e];
            if (!violated) {
                for (const auto& g : gamma)
                    if (e == g.reversed() && !crossed.count(g)) violated = true;
                if (!visited.count(to) && coupled_index.count(to)) {
                    const auto& cv = coupled[coupled_index[to]];
                    // interior nodes must first be entered by the path edge
                    if (!(e == cv.back_edge.reversed())) violated = true;
                }
            }
            visited.insert(to);
            if (first_time) {
                for (auto& cv : coupled) {
                    if (cv.q) continue;
                    if (e == cv.path_edge && crossed.count(cv.back_edge)) {
                        // back edge crossed first: M_f = 1, M_e = prior e-uses
                        cv.q = 1.0 / static_cast<double>(cross_count[cv.back_edge]);
                    } else if (e == cv.back_edge && crossed.count(cv.path_edge)) {
                        // path edge crossed first: M_e = 1, M_f = prior f-uses
                        cv.q = static_cast<double>(cross_count[cv.path_edge]);
                    }
                }
            }
        };

        auto normal_choice = [&](NodeId v, const std::vector<NodeId>& nbrs,
                                 const std::set<NodeId>& excluded) -> NodeId {
            double total = 0.0;
            for (NodeId t : nbrs)
                if (!excluded.count(t)) total += weights.weight(Edge(v, t));
            double u = rng.uniform01() * total;
            double acc = 0.0;
            NodeId last = v;
            for (NodeId t : nbrs) {
                if (excluded.count(t)) continue;
                acc += weights.weight(Edge(v, t));
                last = t;
                if (u < acc) return t;
            }
            if (last == v) throw std::logic_error("no admissible neighbor");
            return last;
        };

        NodeId pos = v0;
        std::uint64_t step = 0;
        while (!violated && !all_resolved()) {
            if (++step > opt.step_cap)
                throw std::runtime_error("coupling episode exceeded the step cap");
            auto nbrs = graph.neighbors(pos);
            auto idx = coupled_index.find(pos);
            detail::CoupledVertex* cv =
                idx == coupled_index.end() ? nullptr : &coupled[idx->second];
            if (cv) ++cv->visits;

            if (!cv || cv->q || cv->phase == detail::CoupledVertex::Phase::Free) {
                NodeId to = normal_choice(pos, nbrs, {});
                move_along(pos, to);
                pos = to;
                continue;
            }

            const NodeId back_node = cv->back_edge.head;
            const NodeId path_node = cv->path_edge.head;
            double w_total = 0.0;
            for (NodeId t : nbrs) w_total += weights.weight(Edge(pos, t));

            switch (cv->phase) {
                case detail::CoupledVertex::Phase::Untouched: {
                    if (cv->visits != 1)
                        throw std::logic_error("untouched vertex beyond its first visit");
                    const double p_back = weights.weight(Edge(pos, back_node)) / w_total;
                    const double p_star = (1.0 + a) / (1.0 + bern_yp);
                    const double expected_total =
                        1.0 + static_cast<double>(graph.degree(pos)) * a;
                    if (p_back < p_star - 1e-9 || std::abs(w_total - expected_total) > 1e-9)
                        throw std::logic_error("first-visit state outside the coupling table");
                    bool yp0 = y_prime_value(*cv, 0, rng);
                    cv->first_y_prime = yp0;
                    NodeId to;
                    if (yp0 || rng.uniform01() < (p_back - p_star) / (1.0 - p_star)) {
                        to = back_node;
                    } else {
                        to = normal_choice(pos, nbrs, {back_node});
                    }
                    if (pos == gamma[1].tail && !counted_first_visit_stat) {
                        counted_first_visit_stat = true;
                        ++result.first_visit_total;
                        if (to == back_node) ++result.first_visit_back_exits;
                    }
                    if (yp0) {
                        cv->phase = detail::CoupledVertex::Phase::PathBranch;
                        cv->fe_uses = 1; // the forced exit along the back edge
                    } else {
                        cv->phase = detail::CoupledVertex::Phase::BackBranch;
                    }
                    move_along(pos, to);
                    pos = to;
                    break;
                }
                case detail::CoupledVertex::Phase::BackBranch: {
                    // Y'_0 = 0: consume one Y' per visit until the back edge
                    // has been used, then the vertex walks freely
                    if (crossed.count(cv->back_edge)) {
                        cv->phase = detail::CoupledVertex::Phase::Free;
                        NodeId to = normal_choice(pos, nbrs, {});
                        move_along(pos, to);
                        pos = to;
                        break;
                    }
                    const std::uint64_t n = cv->visits;
                    if (n < 2) throw std::logic_error("back branch before the second visit");
                    const double p_back = weights.weight(Edge(pos, back_node)) / w_total;
                    const double p_star =
                        (1.0 + a) / (2.0 * static_cast<double>(n) - 1.0 + bern_yp);
                    const double expected_total = 2.0 * static_cast<double>(n) - 1.0 +
                                                  static_cast<double>(graph.degree(pos)) * a;
                    if (p_back < p_star - 1e-9 || std::abs(w_total - expected_total) > 1e-9)
                        throw std::logic_error("back-branch state outside the coupling table");
                    NodeId to;
                    if (y_prime_value(*cv, n - 1, rng) ||
                        rng.uniform01() < (p_back - p_star) / (1.0 - p_star)) {
                        to = back_node;
                    } else {
                        to = normal_choice(pos, nbrs, {back_node});
                    }
                    move_along(pos, to);
                    pos = to;
                    break;
                }
                case detail::CoupledVertex::Phase::PathBranch: {
                    // Y'_0 = 1: while the path edge is unused, split between
                    // {f, e} and the rest by weight; inside the pair Y decides
                    const double w_f = weights.weight(Edge(pos, path_node));
                    const double w_e = weights.weight(Edge(pos, back_node));
                    if (crossed.count(cv->path_edge) || std::abs(w_f - a) > 1e-9)
                        throw std::logic_error("path-branch state outside the coupling table");
                    NodeId to;
                    if (rng.uniform01() < (w_f + w_e) / w_total) {
                        const std::uint64_t m = ++cv->fe_uses;
                        const double p_path = w_f / (w_f + w_e);
                        const double p_star = a / (static_cast<double>(m) + bern_y);
                        if (p_path > p_star + 1e-9)
                            throw std::logic_error("path-branch bound outside the coupling table");
                        if (y_value(*cv, m - 1, rng) && rng.uniform01() < p_path / p_star)
                            to = path_node;
                        else
                            to = back_node;
                    } else {
                        to = normal_choice(pos, nbrs, {back_node, path_node});
                    }
                    move_along(pos, to);
                    pos = to;
                    break;
                }
                case detail::CoupledVertex::Phase::Free:
                    throw std::logic_error("unreachable coupling phase");
            }
        }

        if (violated) continue; // D_gamma failed: excluded from the denominator
        ++result.episodes_dgamma;

        bool ok = true;
        for (std::size_t vi = 0; vi < coupled.size(); ++vi) {
            auto& cv = coupled[vi];
            if (!cv.q || cv.y_prime.empty())
                throw std::logic_error("resolved episode left a vertex untracked");
            // Q-bar from the same Bernoulli sequences, extended beyond the
            // consumed prefix with fresh independent draws
            Rng tail = derive_stream(seed, "coupling-tail", ep * 64 + vi);
            double q_bar;
            if (cv.first_y_prime) {
                std::size_t j = 1;
                while (!y_value(cv, j, tail))
                    if (++j > (1u << 24)) throw std::runtime_error("Y sequence never fired");
                q_bar = 1.0 / static_cast<double>(j); // M_bar_f = 1, M_bar_e = j
            } else {
                std::size_t j = 1;
                while (!y_prime_value(cv, j, tail))
                    if (++j > (1u << 24)) throw std::runtime_error("Y' sequence never fired");
                q_bar = static_cast<double>(j); // M_bar_e = 1, M_bar_f = j
            }
            if (*cv.q > q_bar + 1e-12) {
                ok = false;
                break;
            }
        }
        if (ok) ++result.dominated;
    }
    return result;
}

} // namespace rwalks
