#pragma once

// Conductance-ratio estimation from trajectories: for a directed edge e whose
// tail was first entered through e', the ratio c_e / c_e' is estimated by
// Q(e) = M_e / M_f with f the reversal of e', where M_e and M_f count
// departures along the two edges until both have been used. Chaining the
// estimates along first-entrance paths estimates conductances relative to the
// first edge out of the start vertex.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rwalks/graph.hpp"
#include "rwalks/trajectory.hpp"

namespace rwalks {

struct RatioEstimate {
    DirectedEdge edge;        // e, the probed edge
    DirectedEdge entry_edge;  // e', first-entrance edge of e's tail
    DirectedEdge denominator; // f = reverse(e')
    std::uint64_t m_edge = 1;
    std::uint64_t m_denominator = 1;

    double q() const {
        return static_cast<double>(m_edge) / static_cast<double>(m_denominator);
    }
};

struct RatioEstimateSet {
    std::map<DirectedEdge, RatioEstimate> estimates;
    std::vector<DirectedEdge> pending; // probed but not yet resolved
    std::map<NodeId, DirectedEdge> first_arrival;

    // Product of log Q along the first-entrance path ending in e, excluding
    // the path's first edge; estimates log(c_e / c_{first edge}). Empty when
    // some link is unresolved.
    std::optional<double> log_ratio_product(const DirectedEdge& e, NodeId v0) const {
        double acc = 0.0;
        DirectedEdge cur = e;
        for (int guard = 0; guard < 1 << 20; ++guard) {
            if (cur.tail == v0) return acc;
            auto est = estimates.find(cur);
            if (est == estimates.end()) return std::nullopt;
            acc += std::log(est->second.q());
            auto up = first_arrival.find(cur.tail);
            if (up == first_arrival.end()) return std::nullopt;
            cur = up->second;
        }
        throw std::runtime_error("first-entrance chain did not reach the start vertex");
    }
};

// Scan a recorded single-walker trajectory. For every directed edge e out of
// a non-start vertex, resolve Q(e) once both e and the reversed entry edge
// have been crossed; later crossings do not change the counts.
inline RatioEstimateSet conductance_ratio_estimates(const Trajectory& traj, NodeId v0) {
    if (!traj.recorded) throw std::invalid_argument("needs a recorded trajectory");
    if (traj.num_walkers() != 1) throw std::invalid_argument("single-walker trajectories only");
    if (traj.walkers[0].start != v0) throw std::invalid_argument("v0 must be the start vertex");

    RatioEstimateSet out;
    std::map<DirectedEdge, std::vector<std::uint64_t>> crossings;
    std::map<NodeId, bool> seen{{v0, true}};
    for (const auto& r : traj.records) {
        DirectedEdge e{r.from, r.to};
        crossings[e].push_back(r.step);
        if (!seen.count(r.to)) {
            seen[r.to] = true;
            out.first_arrival[r.to] = e;
        }
    }

    auto first_crossing = [&](const DirectedEdge& e) -> std::optional<std::uint64_t> {
        auto it = crossings.find(e);
        if (it == crossings.end()) return std::nullopt;
        return it->second.front();
    };
    auto count_before = [&](const DirectedEdge& e, std::uint64_t t) {
        auto it = crossings.find(e);
        if (it == crossings.end()) return std::uint64_t{0};
        std::uint64_t n = 0;
        for (auto s : it->second) {
            if (s >= t) break;
            ++n;
        }
        return n;
    };

    for (const auto& [node, entry] : out.first_arrival) {
        for (const auto& [probe_cross, times] : crossings) {
            (void)times;
            if (probe_cross.tail != node) continue;
            if (probe_cross.undirected() == entry.undirected()) continue; // backtracking edge
            DirectedEdge f = entry.reversed();
            auto te = first_crossing(probe_cross);
            auto tf = first_crossing(f);
            if (!te || !tf) {
                out.pending.push_back(probe_cross);
                continue;
            }
            RatioEstimate est{probe_cross, entry, f, 1, 1};
            if (*te < *tf) {
                est.m_edge = count_before(probe_cross, *tf);
                est.m_denominator = 1;
            } else {
                est.m_denominator = count_before(f, *te);
                est.m_edge = 1;
            }
            out.estimates.emplace(probe_cross, est);
        }
    }
    return out;
}

} // namespace rwalks
