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

#include "pgsi/game.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace pgsi {

ParityGame::ParityGame(std::vector<Node> nodes) : nodes_(std::move(nodes))
{
    const std::size_t n = nodes_.size();
    if (n == 0) throw GameError("game has no nodes");

    std::unordered_set<Priority> seen;
    for (NodeId v = 0; v < n; v++) {
        const Node& node = nodes_[v];
        if (node.successors.empty())
            throw GameError("node " + std::to_string(v) + " has no successor");
        std::unordered_set<NodeId> succ;
        for (NodeId u : node.successors) {
            if (u >= n)
                throw GameError("node " + std::to_string(v) + " has unknown successor " + std::to_string(u));
            if (!succ.insert(u).second)
                throw GameError("node " + std::to_string(v) + " lists successor " + std::to_string(u) + " twice");
        }
        if (!seen.insert(node.priority).second)
            throw GameError("priority " + std::to_string(node.priority) + " is not unique");
        edges_ += node.successors.size();
        max_priority_ = std::max(max_priority_, node.priority);
    }

    by_rank_.resize(n);
    std::iota(by_rank_.begin(), by_rank_.end(), NodeId{0});
    std::sort(by_rank_.begin(), by_rank_.end(),
              [this](NodeId a, NodeId b) { return nodes_[a].priority < nodes_[b].priority; });
    rank_.resize(n);
    for (std::uint32_t r = 0; r < n; r++) rank_[by_rank_[r]] = r;
}

bool
ParityGame::has_edge(NodeId from, NodeId to) const
{
    const auto& s = nodes_.at(from).successors;
    return std::find(s.begin(), s.end(), to) != s.end();
}

std::int64_t
ParityGame::reward(NodeId v) const
{
    const auto p = static_cast<std::int64_t>(nodes_.at(v).priority);
    return p % 2 == 0 ? p : -p;
}

std::vector<NodeId>
ParityGame::nodes_of(Player p) const
{
    std::vector<NodeId> out;
    for (NodeId v = 0; v < nodes_.size(); v++)
        if (nodes_[v].owner == p) out.push_back(v);
    return out;
}

ParityGame
ParityGame::with_successors(std::vector<std::vector<NodeId>> successors) const
{
    if (successors.size() != nodes_.size()) throw GameError("successor table has wrong size");
    std::vector<Node> nodes = nodes_;
    for (std::size_t v = 0; v < nodes.size(); v++) nodes[v].successors = std::move(successors[v]);
    return ParityGame(std::move(nodes));
}

bool
operator==(const ParityGame& a, const ParityGame& b)
{
    if (a.size() != b.size()) return false;
    for (NodeId v = 0; v < a.size(); v++) {
        const Node& x = a.nodes_[v];
        const Node& y = b.nodes_[v];
        if (x.owner != y.owner || x.priority != y.priority || x.successors != y.successors || x.label != y.label)
            return false;
    }
    return true;
}

Strategy
Strategy::first_successor(const ParityGame& g, Player role)
{
    std::vector<NodeId> choice(g.size(), kNoNode);
    for (NodeId v = 0; v < g.size(); v++)
        if (g.owner(v) == role) choice[v] = g.successors(v).front();
    return Strategy(role, std::move(choice));
}

void
Strategy::validate(const ParityGame& g) const
{
    if (choice_.size() != g.size()) throw GameError("strategy size does not match game");
    for (NodeId v = 0; v < g.size(); v++) {
        if (g.owner(v) != role_) {
            if (choice_[v] != kNoNode)
                throw GameError("strategy assigns a move to node " + std::to_string(v) + " of the other player");
            continue;
        }
        if (choice_[v] == kNoNode)
            throw GameError("strategy has no move at node " + std::to_string(v));
        if (choice_[v] >= g.size() || !g.has_edge(v, choice_[v]))
            throw GameError("strategy move " + std::to_string(v) + "->" + std::to_string(choice_[v]) + " is not an edge");
    }
}

bool
Strategy::is_valid(const ParityGame& g) const
{
    try {
        validate(g);
        return true;
    } catch (const GameError&) {
        return false;
    }
}

}  // namespace pgsi
