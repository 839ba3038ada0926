#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rwalks/dynamics.hpp"

using namespace rwalks;

namespace {

WalkerSystem line_system(BiasRule bias) {
    return WalkerSystem(Graph::integer_line(), ReinforcementScheme::linear(1.0, 1.0),
                        Scheduler::single(), bias, {0});
}

} // namespace

TEST_CASE("one-step probabilities") {
    SECTION("no bias, symmetric weights") {
        auto sys = line_system(BiasRule::none());
        auto p = sys.transition_probabilities(0);
        REQUIRE(p.size() == 2);
        REQUIRE(p[0].second == Catch::Approx(0.5));
    }
    SECTION("additive lambda = 2 with unit weights gives 3/4 right") {
        auto sys = line_system(BiasRule::additive(2.0));
        auto p = sys.transition_probabilities(0);
        REQUIRE(p[0].first == 1);
        REQUIRE(p[0].second == Catch::Approx(0.75));
    }
    SECTION("multiplicative lambda = 3 with unit weights gives 3/4 right") {
        auto sys = line_system(BiasRule::multiplicative(3.0));
        auto p = sys.transition_probabilities(0);
        REQUIRE(p[0].first == 1);
        REQUIRE(p[0].second == Catch::Approx(0.75));
    }
}

TEST_CASE("one-step probabilities sum to 1 along sampled states") {
    Rng rng(31);
    for (double lambda : {0.5, 1.0, 2.0}) {
        auto sys = line_system(BiasRule::multiplicative(lambda));
        for (int i = 0; i < 200; ++i) {
            auto probs = sys.transition_probabilities(0);
            double sum = 0.0;
            for (auto& [node, p] : probs) sum += p;
            REQUIRE(std::abs(sum - 1.0) < 1e-12);
            sys.step(rng);
        }
    }
}

TEST_CASE("alternating scheduler moves walker 1 first") {
    WalkerSystem sys(Graph::centered_segment(3), ReinforcementScheme::linear(1.0, 1.0),
                     Scheduler::alternating(), BiasRule::none(), {0, 0});
    Rng rng(8);
    auto r1 = sys.step(rng);
    auto r2 = sys.step(rng);
    auto r3 = sys.step(rng);
    auto r4 = sys.step(rng);
    REQUIRE(r1.walker == 0);
    REQUIRE(r2.walker == 1);
    REQUIRE(r3.walker == 0);
    REQUIRE(r4.walker == 1);
    // with the alternating scheduler both walkers are home exactly at times 4n
    REQUIRE(sys.positions()[0] == 0);
    REQUIRE(sys.positions()[1] == 0);
}

TEST_CASE("alternating walkers meet at the center exactly at multiples of four") {
    // exhaustive over the 4-step episodes: positions at times 1..3 never have
    // both walkers at the center
    WalkerSystem sys(Graph::centered_segment(3), ReinforcementScheme::linear(1.0, 1.0),
                     Scheduler::alternating(), BiasRule::none(), {0, 0});
    Rng rng(12);
    Trajectory t = run(sys, 400, rng);
    auto taus = center_meeting_times(t);
    for (auto tau : taus) REQUIRE(tau % 4 == 0);
    REQUIRE(taus.size() == 101); // 0, 4, 8, ..., 400
}

TEST_CASE("runs are deterministic in the seed") {
    auto make = [&] {
        WalkerSystem sys(Graph::integer_line(), ReinforcementScheme::linear(1.0, 1.0),
                         Scheduler::uniform_random(2), BiasRule::none(), {0, 0});
        Rng rng(123456);
        return run(sys, 5000, rng);
    };
    Trajectory a = make();
    Trajectory b = make();
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        REQUIRE(a.records[i].walker == b.records[i].walker);
        REQUIRE(a.records[i].to == b.records[i].to);
    }
}

TEST_CASE("zero-step run leaves initial state") {
    WalkerSystem sys(Graph::integer_line(), ReinforcementScheme::linear(1.0, 1.0),
                     Scheduler::single(), BiasRule::none(), {0});
    Rng rng(5);
    Trajectory t = run(sys, 0, rng);
    REQUIRE(t.records.empty());
    REQUIRE(t.walkers[0].final_pos == 0);
    REQUIRE(t.walkers[0].visits.at(0) == 1);
}

TEST_CASE("vrrw transitions use target vertex weights") {
    // star around 0: neighbor 1 visited 3 times, neighbor 2 unvisited
    auto sys = WalkerSystem::vrrw(Graph::from_adjacency({{0, {1, 2}}, {1, {0}}, {2, {0}}}),
                                  ReinforcementScheme::linear(1.0, 1.0), Scheduler::single(), {0});
    auto& vw = sys.vertex_weights();
    vw.record_visit(1);
    vw.record_visit(1);
    vw.record_visit(1);
    auto p = sys.transition_probabilities(0);
    REQUIRE(p[0].first == 1);
    REQUIRE(p[0].second == Catch::Approx(0.8)); // weights 4 vs 1
    REQUIRE(p[1].second == Catch::Approx(0.2));
}

TEST_CASE("vrrw landing increments the visit count") {
    auto sys = WalkerSystem::vrrw(Graph::centered_segment(5),
                                  ReinforcementScheme::linear(1.0, 1.0), Scheduler::single(), {0});
    Rng rng(3);
    auto before = sys.vertex_weights().clock();
    auto rec = sys.step(rng);
    REQUIRE(sys.vertex_weights().clock() == before + 1);
    REQUIRE(sys.vertex_weights().visit_count(rec.to) >= 1);
}

TEST_CASE("biased rules reject non-oriented graphs") {
    REQUIRE_THROWS_AS(WalkerSystem(Graph::regular_tree(3, 2), ReinforcementScheme::linear(1.0, 1.0),
                                   Scheduler::single(), BiasRule::multiplicative(2.0), {0}),
                      std::invalid_argument);
}

TEST_CASE("scheduler and walker count must agree") {
    REQUIRE_THROWS_AS(WalkerSystem(Graph::integer_line(), ReinforcementScheme::linear(1.0, 1.0),
                                   Scheduler::alternating(), BiasRule::none(), {0, 0, 0}),
                      std::invalid_argument);
}
