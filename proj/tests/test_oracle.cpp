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

#include <algorithm>

#include "helpers.hpp"
#include "pgsi/families.hpp"
#include "pgsi/oracle.hpp"
#include "pgsi/solver.hpp"

using namespace pgsi;
using namespace pgsi::test;

TEST_CASE("strategy enumeration")
{
    ParityGame g = make_game({{P0, 1, {0, 1}}, {P0, 2, {0, 1, 2}}, {P1, 3, {0, 2}}});
    CHECK(strategy_count(g, P0) == 6);
    CHECK(strategy_count(g, P1) == 2);
    std::vector<Strategy> seen;
    for_each_strategy(g, P0, [&](const Strategy& s) {
        CHECK(s.is_valid(g));
        seen.push_back(s);
    });
    CHECK(seen.size() == 6);
    CHECK(seen.front() == Strategy::first_successor(g, P0));
    std::sort(seen.begin(), seen.end(), [](const Strategy& a, const Strategy& b) { return a.choices() < b.choices(); });
    CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
}

TEST_CASE("single even self-loop")
{
    ParityGame g = make_game({{P0, 2, {0}}});
    BruteForceResult r = brute_force_parity(g);
    CHECK(r.w0 == std::vector<NodeId>{0});
    CHECK(brute_force_winning_sets(g).w0 == std::vector<NodeId>{0});
}

TEST_CASE("G_1 is won by player 1 everywhere")
{
    FamilyGame fg = gen_locally(1);
    BruteForceResult r = brute_force_parity(fg.game);
    CHECK(r.w0.empty());
    CHECK(r.w1.size() == 14);
    CHECK(r.valuation == solve(fg.game, fg.initial, LocalPolicy{}).valuation);
}

TEST_CASE("search caps raise errors")
{
    FamilyGame fg = gen_locally(3);
    CHECK_THROWS_AS(brute_force_parity(fg.game), SearchSpaceOverflow);
    CHECK_THROWS_AS(brute_force_winning_sets(fg.game), SearchSpaceOverflow);
    FamilyGame g1 = gen_locally(1);
    GameValuation val = best_response(g1.game, g1.initial).valuation;
    CHECK_THROWS_AS(brute_force_global(g1.game, g1.initial, val, 2), SearchSpaceOverflow);
}

TEST_CASE("solver fixpoints match exhaustive search")
{
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        RandomGame rg = gen_random(seed, 1 + seed % 7, 3);
        SolveReport r = solve(rg.game, rg.initial, LocalPolicy{});
        BruteForceResult b = brute_force_parity(rg.game);
        CHECK(r.valuation == b.valuation);
        CHECK(r.w0 == b.w0);
        CHECK(r.w0 == brute_force_winning_sets(rg.game).w0);
        CHECK(best_response(rg.game, rg.initial).valuation == brute_force_valuation(rg.game, rg.initial));
    }
}

TEST_CASE("results do not depend on successor order")
{
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        RandomGame rg = gen_random(seed, 2 + seed % 6, 3);
        std::vector<std::vector<NodeId>> reversed;
        for (NodeId v = 0; v < rg.game.size(); ++v)
            reversed.emplace_back(rg.game.successors(v).rbegin(), rg.game.successors(v).rend());
        ParityGame flipped = rg.game.with_successors(reversed);
        CHECK(brute_force_parity(flipped).valuation == brute_force_parity(rg.game).valuation);
        CHECK(brute_force_valuation(flipped, rg.initial) == brute_force_valuation(rg.game, rg.initial));
    }
}

TEST_CASE("globally optimal arena strategy")
{
    ParityGame g = make_game({{P1, 1, {0}}, {P0, 4, {0}}, {P0, 6, {1}}});
    Strategy sigma = Strategy::first_successor(g, P0);
    CHECK(brute_force_global(g, sigma, best_response(g, sigma).valuation) == sigma);

    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        RandomGame rg = gen_random(seed, 2 + seed % 6, 3);
        const ParityGame& rgg = rg.game;
        SolveReport r = solve(rgg, rg.initial, LocalPolicy{});
        for (const TraceStep& step : r.trace) {
            GameValuation val = best_response(rgg, step.sigma).valuation;
            Strategy glo = brute_force_global(rgg, step.sigma, val);
            GameValuation best = best_response(rgg, glo).valuation;
            CHECK(dominated_by(rgg, best_response(rgg, local_policy(rgg, step.sigma, val)).valuation, best));
            CHECK(best == best_response(rgg, global_policy(rgg, step.sigma, val)).valuation);
        }
    }
}

TEST_CASE("discounted and stochastic enumeration oracles agree with evaluation")
{
    RandomGame rg = gen_random(4, 3, 2);
    DiscountedPayoffGame d = to_dpg(to_mpg(rg.game));
    ValueAssignment lowest = dpg_min_enumeration(d, rg.initial);
    for_each_strategy(rg.game, P1, [&](const Strategy& tau) {
        ValueAssignment v = dpg_evaluate(d, rg.initial, tau);
        for (NodeId u = 0; u < v.size(); ++u) CHECK(lowest[u] <= v[u]);
    });
}
