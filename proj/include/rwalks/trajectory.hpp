#pragma once

// Trajectory recording and the observables read off it: per-walker ranges,
// visit counts, last visit to the origin, meeting times, label exchange.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rwalks/graph.hpp"

namespace rwalks {

struct StepRecord {
    std::uint64_t step; // 1-based; transition from time step-1 to step
    int walker;
    NodeId from;
    NodeId to;
};

struct WalkerSummary {
    NodeId start = 0;
    NodeId final_pos = 0;
    NodeId min_pos = 0;
    NodeId max_pos = 0;
    std::optional<std::uint64_t> last_visit_origin; // last time t with X_t = 0
    std::map<NodeId, std::uint64_t> visits;         // occupancy over t = 0..n
};

struct Trajectory {
    std::uint64_t n_steps = 0;
    bool recorded = false; // records kept only below the streaming threshold
    std::vector<StepRecord> records;
    std::vector<WalkerSummary> walkers;

    int num_walkers() const { return static_cast<int>(walkers.size()); }

    // Position of each walker at every integer time, reconstructed from the
    // records. Requires recorded mode.
    std::vector<std::vector<NodeId>> positions() const {
        if (!recorded) throw std::logic_error("trajectory was not recorded");
        std::vector<std::vector<NodeId>> pos(walkers.size());
        for (std::size_t m = 0; m < walkers.size(); ++m) {
            pos[m].reserve(n_steps + 1);
            pos[m].push_back(walkers[m].start);
        }
        std::vector<NodeId> cur;
        for (const auto& w : walkers) cur.push_back(w.start);
        for (const auto& r : records) {
            if (cur[r.walker] != r.from) throw std::logic_error("inconsistent records");
            cur[r.walker] = r.to;
            for (std::size_t m = 0; m < cur.size(); ++m) pos[m].push_back(cur[m]);
        }
        return pos;
    }
};

// Rebuild a trajectory (with fresh summaries) from starts and records.
inline Trajectory trajectory_from_records(const std::vector<NodeId>& starts,
                                          std::vector<StepRecord> records) {
    Trajectory t;
    t.recorded = true;
    t.n_steps = records.size();
    t.walkers.resize(starts.size());
    for (std::size_t m = 0; m < starts.size(); ++m) {
        auto& w = t.walkers[m];
        w.start = w.final_pos = w.min_pos = w.max_pos = starts[m];
        w.visits[starts[m]] = 1;
        if (starts[m] == 0) w.last_visit_origin = 0;
    }
    for (const auto& r : records) {
        auto& w = t.walkers.at(r.walker);
        if (w.final_pos != r.from) throw std::invalid_argument("records do not chain");
        w.final_pos = r.to;
        w.min_pos = std::min(w.min_pos, r.to);
        w.max_pos = std::max(w.max_pos, r.to);
        ++w.visits[r.to];
        if (r.to == 0) w.last_visit_origin = r.step;
    }
    t.records = std::move(records);
    return t;
}

// The finite-horizon recurrence/transience diagnostics per walker.
inline const std::vector<WalkerSummary>& range_report(const Trajectory& t) { return t.walkers; }

// Times at which the two walkers occupy the same node (used for label
// exchange; includes t = 0 when they start together).
inline std::vector<std::uint64_t> meeting_times(const Trajectory& t) {
    if (t.num_walkers() != 2) throw std::invalid_argument("meeting_times needs exactly 2 walkers");
    auto pos = t.positions();
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 0; n <= t.n_steps; ++n)
        if (pos[0][n] == pos[1][n]) out.push_back(n);
    return out;
}

// Times at which both walkers sit at node 0; the first entry is always 0
// (both walkers must start at the center).
inline std::vector<std::uint64_t> center_meeting_times(const Trajectory& t) {
    if (t.num_walkers() != 2) throw std::invalid_argument("center_meeting_times needs exactly 2 walkers");
    if (t.walkers[0].start != 0 || t.walkers[1].start != 0)
        throw std::invalid_argument("walkers must start at the center");
    auto pos = t.positions();
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 0; n <= t.n_steps; ++n)
        if (pos[0][n] == 0 && pos[1][n] == 0) out.push_back(n);
    return out;
}

// Swap the two walker labels on the intervals (tau_i, tau_{i+1}] selected by
// bits[i], where tau_1 < tau_2 < ... are the meeting times. bits[0] applies
// to the interval after the first meeting; no swap before it. The node
// occupancy multiset at every time step is unchanged by construction.
inline Trajectory label_exchange(const Trajectory& t, const std::vector<bool>& bits) {
    if (t.num_walkers() != 2) throw std::invalid_argument("label_exchange needs exactly 2 walkers");
    auto meets = meeting_times(t);
    std::vector<StepRecord> records = t.records;
    std::size_t meet_idx = 0;
    for (auto& r : records) {
        // interval index = number of meetings strictly before time r.step
        while (meet_idx < meets.size() && meets[meet_idx] < r.step) ++meet_idx;
        std::size_t interval = meet_idx; // meets[0..meet_idx-1] < step
        bool swap = interval >= 1 && interval - 1 < bits.size() && bits[interval - 1];
        if (swap) r.walker = 1 - r.walker;
    }
    // walker identities at time 0 are unswapped (no meeting strictly before
    // any step is possible until the walkers have met once)
    std::vector<NodeId> starts{t.walkers[0].start, t.walkers[1].start};
    return trajectory_from_records(starts, std::move(records));
}

} // namespace rwalks
