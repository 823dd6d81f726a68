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

#include <compare>
#include <cstdint>
#include <utility>
#include <vector>

#include "pgsi/game.hpp"

namespace pgsi {

/**
 * Set of nodes of one game, stored as a bitset over relevance ranks: bit r
 * is the node ParityGame::at_rank(r). The most relevant node of a symmetric
 * difference is then the highest differing bit.
 */
class NodeSet {
public:
    NodeSet() = default;
    explicit NodeSet(std::size_t node_count) : words_((node_count + 63) / 64, 0) {}

    static NodeSet of(const ParityGame& g, std::span<const NodeId> nodes);

    void insert_rank(std::uint32_t r) { words_[r / 64] |= std::uint64_t{1} << (r % 64); }
    bool contains_rank(std::uint32_t r) const { return (words_[r / 64] >> (r % 64)) & 1U; }
    void insert(const ParityGame& g, NodeId v) { insert_rank(g.rank(v)); }
    bool contains(const ParityGame& g, NodeId v) const { return contains_rank(g.rank(v)); }

    std::size_t count() const;
    bool empty() const;

    /// Highest rank in the symmetric difference, or -1 when the sets are equal.
    std::int64_t highest_difference(const NodeSet& other) const;

    /// Members as node ids, ordered by decreasing relevance.
    std::vector<NodeId> nodes(const ParityGame& g) const;

    const std::vector<std::uint64_t>& words() const { return words_; }

    friend bool operator==(const NodeSet&, const NodeSet&) = default;

private:
    std::vector<std::uint64_t> words_;
};

/// (cycle node, more relevant nodes on the path to it, path length)
struct NodeValuation {
    NodeId cycle = kNoNode;
    NodeSet path;
    std::uint32_t length = 0;

    friend bool operator==(const NodeValuation&, const NodeValuation&) = default;
};

using GameValuation = std::vector<NodeValuation>;

struct Switch {
    NodeId from;
    NodeId to;

    friend auto operator<=>(const Switch&, const Switch&) = default;
};

/// Reward ordering on single nodes.
std::strong_ordering compare_rewards(const ParityGame& g, NodeId a, NodeId b);

/// M ≺ N iff the most relevant node of M △ N is even and in N, or odd and in M.
std::strong_ordering compare_node_sets(const ParityGame& g, const NodeSet& m, const NodeSet& n);

std::strong_ordering compare_valuations(const ParityGame& g, const NodeValuation& a, const NodeValuation& b);

/**
 * Compares Ξ(a) and Ξ(b) as candidate moves at node v. When v is the
 * dominating cycle node of its own valuation, every successor whose play
 * returns to v without meeting a more relevant node leaves v's valuation at
 * (v, ∅, 0), so the length components of such successors are not compared.
 */
std::strong_ordering compare_successors(const ParityGame& g, const GameValuation& valuation, NodeId v, NodeId a,
                                        NodeId b);

/// Ξ ⊴ Ξ' pointwise.
bool dominated_by(const ParityGame& g, const GameValuation& lower, const GameValuation& upper);

/// Ξ ⊲ Ξ': pointwise ⪯ and not equal.
bool strictly_dominated_by(const ParityGame& g, const GameValuation& lower, const GameValuation& upper);

/// Valuation of the unique play from v conforming to sigma (player 0) and tau (player 1).
NodeValuation evaluate_play(const ParityGame& g, const Strategy& sigma, const Strategy& tau, NodeId v);

/// All node valuations for a strategy pair, walking the functional graph once.
GameValuation evaluate_all(const ParityGame& g, const Strategy& sigma, const Strategy& tau);

struct BestResponse {
    Strategy tau;
    GameValuation valuation;
};

/**
 * Optimal player 1 counterstrategy against sigma together with Ξ_σ.
 *
 * Player 1 policy iteration inside the game restricted by sigma, starting
 * from the first successor at every player 1 node. A player 1 node moves to
 * its ≺-minimal successor when that is strictly below the current choice;
 * among equally valued minima the smallest id wins.
 */
BestResponse best_response(const ParityGame& g, const Strategy& sigma);

/// Player 0 edges valued at least as well as the current choice; player 1 edges untouched.
class ImprovementArena {
public:
    ImprovementArena(const ParityGame& g, const Strategy& sigma, const GameValuation& valuation);

    std::span<const NodeId> allowed(NodeId v) const { return allowed_[v]; }
    bool allows(NodeId from, NodeId to) const;

    /// The arena as a parity game over the same node ids.
    ParityGame as_game() const;

private:
    const ParityGame* game_;
    std::vector<std::vector<NodeId>> allowed_;
};

ImprovementArena improvement_arena(const ParityGame& g, const Strategy& sigma, const GameValuation& valuation);

/// Strictly improving player 0 edges, sorted.
std::vector<Switch> improving_switches(const ParityGame& g, const Strategy& sigma, const GameValuation& valuation);

/// Player 0 winning set read off a valuation: nodes whose cycle node is even.
std::vector<NodeId> even_cycle_nodes(const ParityGame& g, const GameValuation& valuation);

/// 64-bit FNV-1a digest of a game valuation.
std::uint64_t digest(const GameValuation& valuation);

}  // namespace pgsi
