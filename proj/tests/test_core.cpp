/*
 * Copyright 2026 The pgsi Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "pgsi/families.hpp"
#include "pgsi/oracle.hpp"
#include "pgsi/solver.hpp"
#include "pgsi/valuation.hpp"

using namespace pgsi;
using namespace pgsi::test;

TEST_CASE("reward keeps even priorities and negates odd ones")
{
    ParityGame g = make_game({{P0, 0, {0}}, {P0, 3, {1}}, {P1, 16, {2}}});
    CHECK(g.reward(0) == 0);
    CHECK(g.reward(1) == -3);
    CHECK(g.reward(2) == 16);
    CHECK_THROWS_AS(g.reward(7), std::out_of_range);
}

TEST_CASE("game construction rejects broken arenas")
{
    CHECK_THROWS_AS(ParityGame(std::vector<Node>{}), GameError);
    CHECK_THROWS_AS(make_game({{P0, 1, {}}}), GameError);
    CHECK_THROWS_AS(make_game({{P0, 1, {3}}}), GameError);
    CHECK_THROWS_AS(make_game({{P0, 1, {0, 0}}}), GameError);
    CHECK_THROWS_AS(make_game({{P0, 1, {1}}, {P1, 1, {0}}}), GameError);
    ParityGame g = make_game({{P0, 5, {1}}, {P1, 2, {0, 1}}});
    CHECK(g.size() == 2);
    CHECK(g.edge_count() == 3);
    CHECK(g.max_priority() == 5);
    CHECK(g.at_rank(0) == 1);
    CHECK(g.at_rank(1) == 0);
}

TEST_CASE("strategies must choose an edge at exactly the owned nodes")
{
    ParityGame g = make_game({{P0, 1, {1}}, {P1, 2, {0, 1}}});
    CHECK(Strategy::first_successor(g, P0).is_valid(g));
    CHECK_FALSE(Strategy(P0, {0, kNoNode}).is_valid(g));
    CHECK_FALSE(Strategy(P0, {1, 1}).is_valid(g));
    CHECK_FALSE(Strategy(P0, {kNoNode, kNoNode}).is_valid(g));
    CHECK_THROWS_AS(Strategy(P1, {kNoNode, 2}).validate(g), GameError);
}

TEST_CASE("node set order")
{
    ParityGame g = make_game({{P0, 3, {0}}, {P0, 2, {1}}, {P0, 4, {2}}, {P0, 1, {3}}});
    NodeSet empty(g.size());
    CHECK(compare_node_sets(g, empty, empty) == std::strong_ordering::equal);
    CHECK(compare_node_sets(g, NodeSet::of(g, std::vector<NodeId>{0}), NodeSet::of(g, std::vector<NodeId>{1})) ==
          std::strong_ordering::less);
    CHECK(compare_node_sets(g, NodeSet::of(g, std::vector<NodeId>{2}), NodeSet::of(g, std::vector<NodeId>{0, 1})) ==
          std::strong_ordering::greater);
}

TEST_CASE("valuation order on lengths depends on the cycle parity")
{
    ParityGame g = make_game({{P0, 3, {0}}, {P0, 2, {1}}, {P0, 6, {0}}});
    CHECK(compare_valuations(g, valuation(g, 0, {2}, 2), valuation(g, 0, {2}, 2)) == std::strong_ordering::equal);
    CHECK(compare_valuations(g, valuation(g, 0, {2}, 2), valuation(g, 0, {2}, 3)) == std::strong_ordering::less);
    CHECK(compare_valuations(g, valuation(g, 1, {2}, 2), valuation(g, 1, {2}, 3)) == std::strong_ordering::greater);
    CHECK(compare_valuations(g, valuation(g, 0, {}, 0), valuation(g, 1, {}, 5)) == std::strong_ordering::less);
}

TEST_CASE("evaluate_play on small lassos")
{
    ParityGame g = make_game({{P1, 1, {0}}, {P0, 16, {0}}});
    Strategy sigma = Strategy::first_successor(g, P0);
    Strategy tau = Strategy::first_successor(g, P1);
    CHECK(evaluate_play(g, sigma, tau, 0) == valuation(g, 0, {}, 0));
    CHECK(evaluate_play(g, sigma, tau, 1) == valuation(g, 0, {1}, 1));
}

TEST_CASE("every node of G_1 reaches x under the initial strategy")
{
    FamilyGame fg = gen_locally(1);
    BestResponse br = best_response(fg.game, fg.initial);
    NodeId x = fg.roles.node(Role::X);
    for (NodeId v = 0; v < fg.game.size(); ++v) CHECK(br.valuation[v].cycle == x);
}

TEST_CASE("best response on a three node game")
{
    // x: self-loop, w -> x, v -> {x, w}
    ParityGame g = make_game({{P1, 1, {0}}, {P0, 4, {0}}, {P1, 2, {0, 1}}});
    Strategy sigma = Strategy::first_successor(g, P0);
    BestResponse br = best_response(g, sigma);
    CHECK(br.tau[2] == 0);
    CHECK(br.valuation[2] == valuation(g, 0, {2}, 1));
    Strategy other = br.tau;
    other.set(2, 1);
    CHECK(compare_valuations(g, br.valuation[2], evaluate_play(g, sigma, other, 2)) == std::strong_ordering::less);
}

TEST_CASE("best response without player 1 choices is the play valuation")
{
    ParityGame g = make_game({{P1, 1, {0}}, {P0, 4, {0, 2}}, {P0, 2, {1}}});
    Strategy sigma = Strategy::first_successor(g, P0);
    BestResponse br = best_response(g, sigma);
    CHECK(br.valuation == evaluate_all(g, sigma, Strategy::first_successor(g, P1)));
}

TEST_CASE("best response is below every other counterstrategy")
{
    std::mt19937_64 rng(7);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        RandomGame rg = gen_random(seed, 2 + seed % 6, 3);
        const ParityGame& g = rg.game;
        BestResponse br = best_response(g, rg.initial);
        for (int k = 0; k < 200; ++k) {
            Strategy tau = Strategy::first_successor(g, P1);
            for (NodeId v : g.nodes_of(P1)) tau.set(v, g.successors(v)[rng() % g.successors(v).size()]);
            GameValuation other = evaluate_all(g, rg.initial, tau);
            REQUIRE(dominated_by(g, br.valuation, other));
        }
    }
}

TEST_CASE("evaluate_all agrees with single plays and extends successor valuations")
{
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        RandomGame rg = gen_random(seed, 1 + seed % 9, 3);
        const ParityGame& g = rg.game;
        Strategy tau = Strategy::first_successor(g, P1);
        GameValuation all = evaluate_all(g, rg.initial, tau);
        for (NodeId v = 0; v < g.size(); ++v) {
            REQUIRE(all[v] == evaluate_play(g, rg.initial, tau, v));
            REQUIRE(all[v].length >= all[v].path.count());
            for (NodeId p : all[v].path.nodes(g)) REQUIRE(g.priority(p) > g.priority(all[v].cycle));
            if (on_cycle(g, rg.initial, tau, v)) continue;
            NodeId u = g.owner(v) == P0 ? rg.initial[v] : tau[v];
            NodeValuation expect = all[u];
            expect.length += 1;
            if (g.priority(v) > g.priority(expect.cycle)) expect.path.insert(g, v);
            REQUIRE(all[v] == expect);
        }
    }
}

TEST_CASE("node set and valuation orders are total orders")
{
    std::mt19937_64 rng(11);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        RandomGame rg = gen_random(seed, 3 + seed % 10, 2);
        const ParityGame& g = rg.game;
        auto random_valuation = [&] {
            NodeId c = rng() % g.size();
            NodeSet path(g.size());
            for (NodeId v = 0; v < g.size(); ++v)
                if (g.priority(v) > g.priority(c) && rng() % 2) path.insert(g, v);
            return NodeValuation{c, path, static_cast<std::uint32_t>(path.count() + rng() % 3)};
        };
        for (int k = 0; k < 200; ++k) {
            NodeValuation a = random_valuation(), b = random_valuation(), c = random_valuation();
            auto ab = compare_valuations(g, a, b);
            REQUIRE((ab == (0 <=> compare_valuations(g, b, a))));
            REQUIRE((ab == 0) == (a == b));
            if (ab <= 0 && compare_valuations(g, b, c) <= 0) REQUIRE(compare_valuations(g, a, c) <= 0);
            auto sab = compare_node_sets(g, a.path, b.path);
            REQUIRE((sab == (0 <=> compare_node_sets(g, b.path, a.path))));
            REQUIRE((sab == 0) == (a.path == b.path));
            if (sab <= 0 && compare_node_sets(g, b.path, c.path) <= 0)
                REQUIRE(compare_node_sets(g, a.path, c.path) <= 0);
        }
    }
}

TEST_CASE("arena keeps the current choice and ties and drops worse edges")
{
    // x (odd self-loop) dominates; 2 and 3 tie, 4 passes an even node above x, 0 is a shorter odd play
    ParityGame g = make_game({{P1, 7, {0}}, {P0, 2, {0, 2, 3, 4}}, {P0, 3, {0}}, {P0, 4, {0}}, {P0, 8, {0}}});
    Strategy sigma(P0, {kNoNode, 2, 0, 0, 0});
    BestResponse br = best_response(g, sigma);
    ImprovementArena arena(g, sigma, br.valuation);
    CHECK(arena.allows(1, 2));
    CHECK(arena.allows(1, 3));
    CHECK(arena.allows(1, 4));
    CHECK_FALSE(arena.allows(1, 0));
    CHECK(arena.as_game().successors(1).size() == 3);
    CHECK(improving_switches(g, sigma, br.valuation) == std::vector<Switch>{{1, 4}});

    Strategy best(P0, {kNoNode, 4, 0, 0, 0});
    GameValuation opt = best_response(g, best).valuation;
    ImprovementArena fixed(g, best, opt);
    CHECK(std::vector<NodeId>(fixed.allowed(1).begin(), fixed.allowed(1).end()) == std::vector<NodeId>{4});
    CHECK(improving_switches(g, best, opt).empty());
}

TEST_CASE("arena on G_3 lets d_1 move to e_1")
{
    FamilyGame fg = gen_locally(3);
    BestResponse br = best_response(fg.game, fg.initial);
    ImprovementArena arena(fg.game, fg.initial, br.valuation);
    CHECK(arena.allows(fg.roles.node(Role::D, 1), fg.roles.node(Role::E, 1)));
    CHECK_FALSE(improving_switches(fg.game, fg.initial, br.valuation).empty());
}

TEST_CASE("improving switches vanish at the optimum and match pairwise comparison")
{
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        RandomGame rg = gen_random(seed, 1 + seed % 7, 3);
        const ParityGame& g = rg.game;
        GameValuation val = brute_force_valuation(g, rg.initial);
        std::vector<Switch> expect;
        for (NodeId v : g.nodes_of(P0))
            for (NodeId u : g.successors(v))
                if (u != rg.initial[v] && compare_successors(g, val, v, rg.initial[v], u) < 0) expect.push_back({v, u});
        REQUIRE(improving_switches(g, rg.initial, best_response(g, rg.initial).valuation) == expect);
        SolveReport r = solve(g, rg.initial, LocalPolicy{});
        REQUIRE(improving_switches(g, r.sigma, r.valuation).empty());
    }
}

TEST_CASE("a cycle node does not improve by shortening its own cycle")
{
    // 0 <-> 2 is an even cycle led by node 2; 2 also has a self-loop
    ParityGame g = make_game({{P0, 1, {2, 5}}, {P0, 4, {2, 4, 5}}, {P0, 2, {0, 2}},
                              {P1, 6, {0, 1, 5}}, {P1, 3, {1, 3, 5}}, {P1, 5, {0, 1, 3}}});
    Strategy sigma(P0, {2, 2, 0, kNoNode, kNoNode, kNoNode});
    BestResponse br = best_response(g, sigma);
    REQUIRE(br.valuation[2].cycle == 2);
    for (const Switch& s : improving_switches(g, sigma, br.valuation)) CHECK_FALSE((s.from == 2 && s.to == 2));
    CHECK_NOTHROW(solve(g, sigma, LocalPolicy{}));
}

TEST_CASE("digest separates different valuations")
{
    FamilyGame fg = gen_locally(2);
    SolveReport r = solve(fg.game, fg.initial, LocalPolicy{});
    CHECK(digest(r.valuation) != digest(best_response(fg.game, fg.initial).valuation));
    CHECK(digest(r.valuation) == r.trace.back().valuation_digest);
}
