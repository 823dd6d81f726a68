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

#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "pgsi/game.hpp"
#include "pgsi/payoff.hpp"
#include "pgsi/valuation.hpp"

namespace pgsi {

/** Exhaustive search would exceed its configured cap. */
class SearchSpaceOverflow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Number of positional strategies of a player, saturating at UINT64_MAX.
std::uint64_t strategy_count(const ParityGame& g, Player p);

/// Calls visit on every positional strategy of player p in lexicographic order of choice indices.
void for_each_strategy(const ParityGame& g, Player p, const std::function<void(const Strategy&)>& visit);

/**
 * Nodewise minimum over every player 1 strategy of the play valuation,
 * using per-node play walks. Throws std::logic_error when no single
 * counterstrategy attains all minima at once.
 */
GameValuation brute_force_valuation(const ParityGame& g, const Strategy& sigma);

struct BruteForceResult {
    GameValuation valuation;
    Strategy sigma;
    std::vector<NodeId> w0;
    std::vector<NodeId> w1;
};

/// ⊴-optimal valuation over all player 0 strategies; cap bounds the number of strategy pairs.
BruteForceResult brute_force_parity(const ParityGame& g, std::uint64_t cap = 1'000'000);

/// ⊴-maximal strategy of the improvement arena; among realizers the lexicographically smallest choices.
Strategy brute_force_global(const ParityGame& g, const Strategy& sigma, const GameValuation& valuation,
                            std::uint64_t cap = 100'000);

struct WinningSets {
    std::vector<NodeId> w0;
    std::vector<NodeId> w1;
};

/// Winning regions by enumerating both players' positional strategies and reading off the play cycles.
WinningSets brute_force_winning_sets(const ParityGame& g, std::uint64_t cap = 1'000'000);

/// Nodewise minimum of the discounted value over every player 1 strategy.
ValueAssignment dpg_min_enumeration(const DiscountedPayoffGame& d, const Strategy& sigma,
                                    std::uint64_t cap = 100'000);

/// Nodewise minimum of the absorption probability over every Min strategy.
ValueAssignment ssg_min_enumeration(const SimpleStochasticGame& s, const Strategy& max_strategy,
                                    std::uint64_t cap = 100'000);

}  // namespace pgsi
