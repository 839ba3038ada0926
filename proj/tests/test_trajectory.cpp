#include <catch2/catch_amalgamated.hpp>

#include "rwalks/dynamics.hpp"
#include "rwalks/stats.hpp"
#include "rwalks/trajectory.hpp"

using namespace rwalks;

TEST_CASE("summary is recomputable from records") {
    WalkerSystem sys(Graph::integer_line(), ReinforcementScheme::linear(1.0, 1.0),
                     Scheduler::uniform_random(2), BiasRule::none(), {0, 0});
    Rng rng(17);
    Trajectory t = run(sys, 2000, rng);
    Trajectory rebuilt = trajectory_from_records({0, 0}, t.records);
    for (int m = 0; m < 2; ++m) {
        REQUIRE(rebuilt.walkers[m].final_pos == t.walkers[m].final_pos);
        REQUIRE(rebuilt.walkers[m].min_pos == t.walkers[m].min_pos);
        REQUIRE(rebuilt.walkers[m].max_pos == t.walkers[m].max_pos);
        REQUIRE(rebuilt.walkers[m].last_visit_origin == t.walkers[m].last_visit_origin);
        REQUIRE(rebuilt.walkers[m].visits == t.walkers[m].visits);
    }
}

TEST_CASE("range report of a stationary walker") {
    WalkerSystem sys(Graph::integer_line(), ReinforcementScheme::linear(1.0, 1.0),
                     Scheduler::single(), BiasRule::none(), {5});
    Rng rng(1);
    Trajectory t = run(sys, 0, rng);
    const auto& w = range_report(t)[0];
    REQUIRE(w.min_pos == 5);
    REQUIRE(w.max_pos == 5);
    REQUIRE_FALSE(w.last_visit_origin.has_value());
}

TEST_CASE("center meeting times trace a hand-built episode") {
    // walker 1 left then back, walker 2 right then back, alternating
    std::vector<StepRecord> recs{
        {1, 0, 0, -1}, {2, 1, 0, 1}, {3, 0, -1, 0}, {4, 1, 1, 0}};
    Trajectory t = trajectory_from_records({0, 0}, recs);
    auto taus = center_meeting_times(t);
    REQUIRE(taus == std::vector<std::uint64_t>{0, 4});
}

TEST_CASE("label exchange identity and full swap") {
    WalkerSystem sys(Graph::centered_segment(3), ReinforcementScheme::linear(1.0, 1.0),
                     Scheduler::uniform_random(2), BiasRule::none(), {0, 0});
    Rng rng(23);
    Trajectory t = run(sys, 500, rng);
    auto meets = meeting_times(t);
    REQUIRE(meets.size() >= 2);

    Trajectory same = label_exchange(t, std::vector<bool>(meets.size(), false));
    REQUIRE(same.records.size() == t.records.size());
    for (std::size_t i = 0; i < t.records.size(); ++i)
        REQUIRE(same.records[i].walker == t.records[i].walker);

    Trajectory swapped = label_exchange(t, std::vector<bool>(meets.size(), true));
    auto pos = t.positions();
    auto pos_swapped = swapped.positions();
    // the multiset of positions is unchanged at every time step
    for (std::uint64_t n = 0; n <= t.n_steps; ++n) {
        REQUIRE(std::min(pos[0][n], pos[1][n]) == std::min(pos_swapped[0][n], pos_swapped[1][n]));
        REQUIRE(std::max(pos[0][n], pos[1][n]) == std::max(pos_swapped[0][n], pos_swapped[1][n]));
    }
    // the first meeting happens at time 0 here, so a set bit swaps the label
    // sequences right away: the swapped walker 1 must follow walker 2's moves
    // between the first two meetings
    for (std::uint64_t n = meets[0] + 1; n <= meets[1]; ++n) {
        REQUIRE(pos_swapped[0][n] == pos[1][n]);
        REQUIRE(pos_swapped[1][n] == pos[0][n]);
    }
}

TEST_CASE("label exchange with random bits preserves the multiset everywhere") {
    WalkerSystem sys(Graph::integer_line(), ReinforcementScheme::linear(1.0, 1.0),
                     Scheduler::uniform_random(2), BiasRule::none(), {0, 0});
    Rng rng(47);
    Trajectory t = run(sys, 800, rng);
    auto meets = meeting_times(t);
    std::vector<bool> bits;
    Rng bit_rng(99);
    for (std::size_t i = 0; i < meets.size(); ++i) bits.push_back(bit_rng.bernoulli(0.5));
    Trajectory ex = label_exchange(t, bits);
    auto pos = t.positions();
    auto pos_ex = ex.positions();
    for (std::uint64_t n = 0; n <= t.n_steps; ++n) {
        REQUIRE(std::min(pos[0][n], pos[1][n]) == std::min(pos_ex[0][n], pos_ex[1][n]));
        REQUIRE(std::max(pos[0][n], pos[1][n]) == std::max(pos_ex[0][n], pos_ex[1][n]));
    }
}
