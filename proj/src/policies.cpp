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

#include "pgsi/policies.hpp"

namespace pgsi {

std::string
policy_name(const PolicyKind& policy)
{
    switch (policy.index()) {
    case 0: return "local";
    case 1: return "global";
    default: return "linear";
    }
}

NodeSet
agreement_set(const ParityGame& g, const Strategy& target, const Strategy& sigma)
{
    NodeSet m(g.size());
    for (NodeId v = 0; v < g.size(); v++)
        if (g.owner(v) == Player::Even && sigma[v] == target[v]) m.insert(g, v);
    return m;
}

LinearContext
linear_context(const ParityGame& g, const Strategy& target, const Strategy& sigma)
{
    return LinearContext{target, agreement_set(g, target, sigma)};
}

Strategy
local_policy(const ParityGame& g, const Strategy& sigma, const GameValuation& valuation)
{
    Strategy next = sigma;
    for (NodeId v = 0; v < g.size(); v++) {
        if (g.owner(v) != Player::Even) continue;
        NodeId best = sigma[v];
        for (NodeId u : g.successors(v)) {
            auto c = compare_successors(g, valuation, v, u, best);
            if (c > 0 || (c == 0 && best != sigma[v] && u < best)) best = u;
        }
        next.set(v, best);
    }
    return next;
}

Strategy
local_fixpoint(const ParityGame& g, Strategy sigma)
{
    for (;;) {
        GameValuation val = best_response(g, sigma).valuation;
        Strategy next = local_policy(g, sigma, val);
        if (next == sigma) return sigma;
        sigma = std::move(next);
    }
}

Strategy
global_policy(const ParityGame& g, const Strategy& sigma, const GameValuation& valuation)
{
    const ParityGame arena = improvement_arena(g, sigma, valuation).as_game();
    return local_fixpoint(arena, sigma);
}

Strategy
linear_policy(const ParityGame& g, const LinearContext& ctx, const Strategy& sigma, const GameValuation& valuation)
{
    if (ctx.target.role() != Player::Even) throw GameError("linear target must be a player 0 strategy");
    ctx.target.validate(g);
    Strategy next = sigma;
    for (NodeId v = 0; v < g.size(); v++) {
        if (g.owner(v) != Player::Even) continue;
        const NodeId t = ctx.target[v];
        if (compare_successors(g, valuation, v, sigma[v], t) <= 0) next.set(v, t);
    }
    return next;
}

Strategy
apply_policy(const ParityGame& g, const PolicyKind& policy, const Strategy& sigma, const GameValuation& valuation)
{
    if (std::holds_alternative<LocalPolicy>(policy)) return local_policy(g, sigma, valuation);
    if (std::holds_alternative<GlobalPolicy>(policy)) return global_policy(g, sigma, valuation);
    const auto& lin = std::get<LinearPolicy>(policy);
    return linear_policy(g, linear_context(g, lin.target, sigma), sigma, valuation);
}

Strategy
optimal_target(const ParityGame& g, const Strategy& initial)
{
    return local_fixpoint(g, initial);
}

}  // namespace pgsi
