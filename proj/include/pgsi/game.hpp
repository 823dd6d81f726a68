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
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pgsi {

using NodeId = std::uint32_t;
using Priority = std::uint32_t;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/** Player 0 (Even) wants the highest recurring priority to be even. */
enum class Player : std::uint8_t { Even = 0, Odd = 1 };

inline constexpr Player opponent(Player p) { return p == Player::Even ? Player::Odd : Player::Even; }

/** Raised when a game or strategy violates its structural invariants. */
class GameError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Node {
    Player owner = Player::Even;
    Priority priority = 0;
    std::vector<NodeId> successors;
    std::string label;
};

/**
 * Finite parity game arena with dense node ids 0..size()-1.
 *
 * Construction validates totality of the edge relation and injectivity of
 * the priority function. Nodes are additionally ranked by relevance
 * (rank 0 is the least relevant node), which is the index space of NodeSet.
 */
class ParityGame {
public:
    ParityGame() = default;
    explicit ParityGame(std::vector<Node> nodes);

    std::size_t size() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_; }
    Priority max_priority() const { return max_priority_; }

    const Node& node(NodeId v) const { return nodes_.at(v); }
    Player owner(NodeId v) const { return nodes_[v].owner; }
    Priority priority(NodeId v) const { return nodes_[v].priority; }
    std::span<const NodeId> successors(NodeId v) const { return nodes_[v].successors; }
    const std::string& label(NodeId v) const { return nodes_[v].label; }
    bool has_edge(NodeId from, NodeId to) const;

    bool is_even(NodeId v) const { return nodes_[v].priority % 2 == 0; }

    /// Ω(v) for even priorities, -Ω(v) for odd ones. Throws std::out_of_range on unknown ids.
    std::int64_t reward(NodeId v) const;

    std::uint32_t rank(NodeId v) const { return rank_[v]; }
    NodeId at_rank(std::uint32_t r) const { return by_rank_[r]; }

    std::vector<NodeId> nodes_of(Player p) const;

    /// Same nodes and priorities with replaced successor lists (used for arenas and subgames).
    ParityGame with_successors(std::vector<std::vector<NodeId>> successors) const;

    const std::vector<Node>& nodes() const { return nodes_; }

    friend bool operator==(const ParityGame& a, const ParityGame& b);

private:
    std::vector<Node> nodes_;
    std::vector<std::uint32_t> rank_;
    std::vector<NodeId> by_rank_;
    std::size_t edges_ = 0;
    Priority max_priority_ = 0;
};

/**
 * Positional strategy of one player. Only nodes owned by that player carry
 * a choice; every other entry is kNoNode.
 */
class Strategy {
public:
    Strategy() = default;
    Strategy(Player role, std::vector<NodeId> choices) : role_(role), choice_(std::move(choices)) {}

    /// Picks the first listed successor at every owned node.
    static Strategy first_successor(const ParityGame& g, Player role);

    Player role() const { return role_; }
    std::size_t size() const { return choice_.size(); }
    NodeId operator[](NodeId v) const { return choice_[v]; }
    void set(NodeId v, NodeId target) { choice_[v] = target; }
    const std::vector<NodeId>& choices() const { return choice_; }

    /// Throws GameError unless the domain is exactly the owned nodes and every choice is an edge.
    void validate(const ParityGame& g) const;
    bool is_valid(const ParityGame& g) const;

    friend bool operator==(const Strategy&, const Strategy&) = default;

private:
    Player role_ = Player::Even;
    std::vector<NodeId> choice_;
};

}  // namespace pgsi
