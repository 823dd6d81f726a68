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

#include <string>
#include <variant>

#include "pgsi/game.hpp"
#include "pgsi/valuation.hpp"

namespace pgsi {

struct LocalPolicy {};
struct GlobalPolicy {};

/** Chases a fixed ⊴-optimal strategy: adopt target(v) whenever the arena allows it. */
struct LinearPolicy {
    Strategy target;
};

using PolicyKind = std::variant<LocalPolicy, GlobalPolicy, LinearPolicy>;

std::string policy_name(const PolicyKind& policy);

/// Target strategy together with the player 0 nodes on which sigma already agrees with it.
struct LinearContext {
    Strategy target;
    NodeSet agreement;
};

LinearContext linear_context(const ParityGame& g, const Strategy& target, const Strategy& sigma);

/// Nodes of player 0 where sigma and target make the same choice.
NodeSet agreement_set(const ParityGame& g, const Strategy& target, const Strategy& sigma);

/**
 * Best successor at every player 0 node. Keeps sigma(v) when it is among the
 * maxima, otherwise takes the maximal successor with the smallest id.
 */
Strategy local_policy(const ParityGame& g, const Strategy& sigma, const GameValuation& valuation);

/// ⊴-optimal strategy of the improvement arena, found by local iteration inside the arena.
Strategy global_policy(const ParityGame& g, const Strategy& sigma, const GameValuation& valuation);

/// Throws GameError when ctx.target is not a player 0 strategy of g.
Strategy linear_policy(const ParityGame& g, const LinearContext& ctx, const Strategy& sigma,
                       const GameValuation& valuation);

/// Dispatches on the policy kind.
Strategy apply_policy(const ParityGame& g, const PolicyKind& policy, const Strategy& sigma,
                      const GameValuation& valuation);

/// Local iteration to its fixpoint without any bookkeeping.
Strategy local_fixpoint(const ParityGame& g, Strategy sigma);

/// A ⊴-optimal strategy suitable as the target of the linear policy.
Strategy optimal_target(const ParityGame& g, const Strategy& initial);

}  // namespace pgsi
