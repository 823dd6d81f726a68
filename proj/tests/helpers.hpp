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

#include <initializer_list>
#include <tuple>
#include <vector>

#include "pgsi/game.hpp"
#include "pgsi/valuation.hpp"

namespace pgsi::test {

struct Spec {
    Player owner;
    Priority priority;
    std::vector<NodeId> successors;
};

inline ParityGame
make_game(std::initializer_list<Spec> specs)
{
    std::vector<Node> nodes;
    for (const auto& s : specs) nodes.push_back(Node{s.owner, s.priority, s.successors, ""});
    return ParityGame(std::move(nodes));
}

inline constexpr Player P0 = Player::Even;
inline constexpr Player P1 = Player::Odd;

inline NodeValuation
valuation(const ParityGame& g, NodeId cycle, std::vector<NodeId> path, std::uint32_t length)
{
    return NodeValuation{cycle, NodeSet::of(g, path), length};
}

/// True when v lies on the cycle reached under the strategy pair.
inline bool
on_cycle(const ParityGame& g, const Strategy& sigma, const Strategy& tau, NodeId v)
{
    auto next = [&](NodeId u) { return g.owner(u) == Player::Even ? sigma[u] : tau[u]; };
    NodeId u = next(v);
    for (std::size_t i = 0; i < g.size(); ++i, u = next(u))
        if (u == v) return true;
    return false;
}

}  // namespace pgsi::test
