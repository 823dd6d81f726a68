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

#include "helpers.hpp"
#include "pgsi/counterlab.hpp"
#include "pgsi/families.hpp"
#include "pgsi/solver.hpp"

using namespace pgsi;
using namespace pgsi::test;

TEST_CASE("bit vector helpers")
{
    Bits b{1, 1, 0, 1};
    CHECK(least_unset(b) == 3);
    CHECK(least_set(b) == 1);
    CHECK(least_set(Bits{0, 0}) == 3);
    CHECK(least_unset(Bits{1, 1}) == 3);
    CHECK(increment(b) == Bits{0, 0, 1, 1});
    CHECK(increment(Bits{1, 1}) == Bits{0, 0});
    CHECK(to_integer(b) == 11);
    CHECK(to_string(b) == "1011");
}

TEST_CASE("bit state of the initial strategies")
{
    FamilyGame g3 = gen_locally(3);
    BitState a = bit_state(g3.game, g3.roles, g3.initial);
    CHECK(a.bits == Bits{0, 0, 0});
    CHECK(a.access == Bits{0, 0, 0});

    FamilyGame h3 = gen_globally(3);
    BitState b = bit_state(h3.game, h3.roles, h3.initial);
    CHECK(b.bits == Bits{1, 1, 1});
    CHECK(b.access == Bits{0, 0, 0});
}

TEST_CASE("the local policy fixpoint on G_n has every cycle closed")
{
    for (std::uint32_t n = 3; n <= 5; ++n) {
        FamilyGame fg = gen_locally(n);
        SolveReport r = solve(fg.game, fg.initial, LocalPolicy{});
        CHECK(bit_state(fg.game, fg.roles, r.sigma).bits == Bits(n, 1));
    }
}

TEST_CASE("deceleration lane states")
{
    FamilyGame fg = gen_locally(3);
    CHECK(deceleration_state(fg.game, fg.roles, fg.initial) == DecelerationState{Role::R, 2});

    Strategy all_s = fg.initial;
    NodeId s = fg.roles.node(Role::S);
    for (std::uint32_t i = 1; i <= fg.roles.lane_length(); ++i) all_s.set(fg.roles.node(Role::T, i), s);
    all_s.set(fg.roles.node(Role::C), s);
    CHECK(deceleration_state(fg.game, fg.roles, all_s) == DecelerationState{Role::S, 1});

    Strategy mixed = fg.initial;
    mixed.set(fg.roles.node(Role::T, 4), s);
    CHECK_FALSE(deceleration_state(fg.game, fg.roles, mixed));
}

TEST_CASE("every strategy of a local run on G_n is well behaved")
{
    for (std::uint32_t n = 3; n <= 5; ++n) {
        FamilyGame fg = gen_locally(n);
        SolveReport r = solve(fg.game, fg.initial, LocalPolicy{});
        for (const TraceStep& step : r.trace) REQUIRE(deceleration_state(fg.game, fg.roles, step.sigma));
    }
}

TEST_CASE("initial strategy of G_3 is in phase 1")
{
    FamilyGame fg = gen_locally(3);
    PhaseReport p = classify_phase(fg.game, fg.roles, fg.initial);
    CHECK(p.phase == Phase::One);
    CHECK(p.counter == Bits{0, 0, 0});
    REQUIRE(p.deceleration);
    CHECK(*p.deceleration == DecelerationState{Role::R, 2});
}

TEST_CASE("phase 3 and phase 4 strategies satisfy their defining clauses")
{
    for (std::uint32_t n = 3; n <= 5; ++n) {
        FamilyGame fg = gen_locally(n);
        SolveReport r = solve(fg.game, fg.initial, LocalPolicy{});
        std::uint64_t threes = 0, fours = 0;
        for (const TraceStep& step : r.trace) {
            PhaseReport p = classify_phase(fg.game, fg.roles, step.sigma);
            if (p.phase == Phase::Three) {
                ++threes;
                CHECK(p.targets.s == least_unset(p.counter));
                CHECK(p.targets.r == least_set(p.counter));
            }
            if (p.phase == Phase::Four) {
                ++fours;
                REQUIRE(p.deceleration);
                CHECK(*p.deceleration == DecelerationState{Role::S, 1});
                Bits next = increment(p.counter);
                CHECK(p.observed.bits == next);
                for (std::uint32_t j = 1; j <= n; ++j)
                    if (!next[j - 1]) CHECK(step.sigma[fg.roles.node(Role::D, j)] == fg.roles.node(Role::S));
            }
        }
        CHECK(threes > 0);
        CHECK(fours > 0);
    }
}

TEST_CASE("counter trace of G_4 counts 0 to 3 on the low bits")
{
    FamilyGame fg = gen_locally(4);
    SolveReport r = solve(fg.game, fg.initial, LocalPolicy{});
    CounterReport c = check_counter_trace(r.trace, fg.game, fg.roles);
    CHECK(c.ok());
    CHECK(c.counting_bits == 2);
    CHECK(c.values == std::vector<std::uint64_t>{0, 1, 2, 3});
    CHECK(c.increments == 4);
    CHECK(c.iterations >= 16);
    CHECK(c.iterations >= 4 * c.increments);
}

TEST_CASE("counter traces of G_3..G_6 conform")
{
    for (std::uint32_t n = 3; n <= 6; ++n) {
        FamilyGame fg = gen_locally(n);
        SolveReport r = solve(fg.game, fg.initial, LocalPolicy{});
        CounterReport c = check_counter_trace(r.trace, fg.game, fg.roles);
        CHECK(c.ok());
        CHECK(c.values.size() >= (std::size_t{1} << (n - 2)));
        for (std::size_t i = 0; i < c.values.size(); ++i) CHECK(c.values[i] == i);
        for (Phase p : c.phases) CHECK(p != Phase::Unclassified);
    }
}

TEST_CASE("counter traces of H_2..H_4 count at their stable points")
{
    for (std::uint32_t n = 2; n <= 4; ++n) {
        FamilyGame fg = gen_globally(n);
        SolveReport r = solve(fg.game, fg.initial, GlobalPolicy{});
        CounterReport c = check_counter_trace(r.trace, fg.game, fg.roles);
        CHECK(c.ok());
        CHECK(c.values.size() >= (std::size_t{1} << (n - 2)));
    }
}

TEST_CASE("a counter decrement is reported")
{
    FamilyGame fg = gen_locally(4);
    SolveReport r = solve(fg.game, fg.initial, LocalPolicy{});
    std::vector<TraceStep> broken;
    for (const TraceStep& step : r.trace) {
        PhaseReport p = classify_phase(fg.game, fg.roles, step.sigma);
        if (p.phase == Phase::One && to_integer(p.counter) == 1) {
            broken.push_back(step);
            break;
        }
    }
    REQUIRE(broken.size() == 1);
    broken.push_back(r.trace.front());
    broken[1].iteration = 1;
    broken[0].iteration = 0;
    CounterReport c = check_counter_trace(broken, fg.game, fg.roles);
    CHECK_FALSE(c.ok());
}
