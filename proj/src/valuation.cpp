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

#include "pgsi/valuation.hpp"

#include <algorithm>
#include <bit>

namespace pgsi {

NodeSet
NodeSet::of(const ParityGame& g, std::span<const NodeId> nodes)
{
    NodeSet s(g.size());
    for (NodeId v : nodes) s.insert(g, v);
    return s;
}

std::size_t
NodeSet::count() const
{
    std::size_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
}

bool
NodeSet::empty() const
{
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::int64_t
NodeSet::highest_difference(const NodeSet& other) const
{
    const std::size_t n = std::max(words_.size(), other.words_.size());
    for (std::size_t i = n; i-- > 0;) {
        const std::uint64_t a = i < words_.size() ? words_[i] : 0;
        const std::uint64_t b = i < other.words_.size() ? other.words_[i] : 0;
        if (a != b) return static_cast<std::int64_t>(i * 64 + 63 - std::countl_zero(a ^ b));
    }
    return -1;
}

std::vector<NodeId>
NodeSet::nodes(const ParityGame& g) const
{
    std::vector<NodeId> out;
    for (std::size_t i = words_.size(); i-- > 0;) {
        std::uint64_t w = words_[i];
        while (w != 0) {
            const int b = 63 - std::countl_zero(w);
            out.push_back(g.at_rank(static_cast<std::uint32_t>(i * 64 + b)));
            w &= ~(std::uint64_t{1} << b);
        }
    }
    return out;
}

std::strong_ordering
compare_rewards(const ParityGame& g, NodeId a, NodeId b)
{
    return g.reward(a) <=> g.reward(b);
}

std::strong_ordering
compare_node_sets(const ParityGame& g, const NodeSet& m, const NodeSet& n)
{
    const std::int64_t d = m.highest_difference(n);
    if (d < 0) return std::strong_ordering::equal;
    const NodeId w = g.at_rank(static_cast<std::uint32_t>(d));
    const bool in_n = n.contains_rank(static_cast<std::uint32_t>(d));
    if (g.is_even(w) == in_n) return std::strong_ordering::less;
    return std::strong_ordering::greater;
}

std::strong_ordering
compare_valuations(const ParityGame& g, const NodeValuation& a, const NodeValuation& b)
{
    if (a.cycle != b.cycle) return compare_rewards(g, a.cycle, b.cycle);
    if (auto c = compare_node_sets(g, a.path, b.path); c != 0) return c;
    if (g.is_even(a.cycle)) return b.length <=> a.length;
    return a.length <=> b.length;
}

std::strong_ordering
compare_successors(const ParityGame& g, const GameValuation& valuation, NodeId v, NodeId a, NodeId b)
{
    const NodeValuation& va = valuation[a];
    const NodeValuation& vb = valuation[b];
    if (valuation[v].cycle == v && va.cycle == v && vb.cycle == v && va.path.empty() && vb.path.empty())
        return std::strong_ordering::equal;
    return compare_valuations(g, va, vb);
}

bool
dominated_by(const ParityGame& g, const GameValuation& lower, const GameValuation& upper)
{
    for (std::size_t v = 0; v < lower.size(); v++)
        if (compare_valuations(g, lower[v], upper[v]) > 0) return false;
    return true;
}

bool
strictly_dominated_by(const ParityGame& g, const GameValuation& lower, const GameValuation& upper)
{
    return dominated_by(g, lower, upper) && lower != upper;
}

namespace {

NodeId
move_of(const ParityGame& g, const Strategy& sigma, const Strategy& tau, NodeId v)
{
    return g.owner(v) == Player::Even ? sigma[v] : tau[v];
}

}  // namespace

NodeValuation
evaluate_play(const ParityGame& g, const Strategy& sigma, const Strategy& tau, NodeId v)
{
    std::vector<NodeId> play;
    std::vector<std::int64_t> seen_at(g.size(), -1);
    NodeId u = v;
    while (seen_at[u] < 0) {
        seen_at[u] = static_cast<std::int64_t>(play.size());
        play.push_back(u);
        u = move_of(g, sigma, tau, u);
    }
    const auto loop_start = static_cast<std::size_t>(seen_at[u]);
    NodeId w = play[loop_start];
    for (std::size_t i = loop_start; i < play.size(); i++)
        if (g.priority(play[i]) > g.priority(w)) w = play[i];

    NodeValuation val{w, NodeSet(g.size()), 0};
    for (NodeId x : play) {
        if (x == w) break;
        if (g.priority(x) > g.priority(w)) val.path.insert(g, x);
        val.length++;
    }
    return val;
}

GameValuation
evaluate_all(const ParityGame& g, const Strategy& sigma, const Strategy& tau)
{
    const std::size_t n = g.size();
    GameValuation val(n);
    enum : std::uint8_t { Fresh, OnStack, Done };
    std::vector<std::uint8_t> state(n, Fresh);
    std::vector<NodeId> stack;

    for (NodeId start = 0; start < n; start++) {
        if (state[start] != Fresh) continue;
        NodeId u = start;
        while (state[u] == Fresh) {
            state[u] = OnStack;
            stack.push_back(u);
            u = move_of(g, sigma, tau, u);
        }
        if (state[u] == OnStack) {
            // u closes a new cycle; resolve the cycle nodes first
            auto it = std::find(stack.begin(), stack.end(), u);
            NodeId w = u;
            for (auto c = it; c != stack.end(); ++c)
                if (g.priority(*c) > g.priority(w)) w = *c;
            const std::size_t len = static_cast<std::size_t>(stack.end() - it);
            const auto wpos = static_cast<std::size_t>(std::find(it, stack.end(), w) - it);
            for (std::size_t i = 0; i < len; i++) {
                NodeId c = *(it + static_cast<std::ptrdiff_t>(i));
                val[c] = NodeValuation{w, NodeSet(n), static_cast<std::uint32_t>((wpos + len - i) % len)};
                state[c] = Done;
            }
            stack.erase(it, stack.end());
        }
        while (!stack.empty()) {
            NodeId x = stack.back();
            stack.pop_back();
            const NodeValuation& next = val[move_of(g, sigma, tau, x)];
            NodeValuation mine{next.cycle, next.path, next.length + 1};
            if (g.priority(x) > g.priority(next.cycle)) mine.path.insert(g, x);
            val[x] = std::move(mine);
            state[x] = Done;
        }
    }
    return val;
}

BestResponse
best_response(const ParityGame& g, const Strategy& sigma)
{
    Strategy tau = Strategy::first_successor(g, Player::Odd);
    for (;;) {
        GameValuation val = evaluate_all(g, sigma, tau);
        bool changed = false;
        for (NodeId v = 0; v < g.size(); v++) {
            if (g.owner(v) != Player::Odd) continue;
            NodeId best = kNoNode;
            for (NodeId u : g.successors(v)) {
                if (best == kNoNode) {
                    best = u;
                    continue;
                }
                auto c = compare_valuations(g, val[u], val[best]);
                if (c < 0 || (c == 0 && u < best)) best = u;
            }
            if (compare_valuations(g, val[best], val[tau[v]]) < 0) {
                tau.set(v, best);
                changed = true;
            }
        }
        if (!changed) return BestResponse{std::move(tau), std::move(val)};
    }
}

ImprovementArena::ImprovementArena(const ParityGame& g, const Strategy& sigma, const GameValuation& valuation)
    : game_(&g), allowed_(g.size())
{
    for (NodeId v = 0; v < g.size(); v++) {
        if (g.owner(v) == Player::Odd) {
            allowed_[v].assign(g.successors(v).begin(), g.successors(v).end());
            continue;
        }
        for (NodeId u : g.successors(v))
            if (compare_successors(g, valuation, v, sigma[v], u) <= 0) allowed_[v].push_back(u);
    }
}

bool
ImprovementArena::allows(NodeId from, NodeId to) const
{
    const auto& a = allowed_.at(from);
    return std::find(a.begin(), a.end(), to) != a.end();
}

ParityGame
ImprovementArena::as_game() const
{
    return game_->with_successors(allowed_);
}

ImprovementArena
improvement_arena(const ParityGame& g, const Strategy& sigma, const GameValuation& valuation)
{
    return ImprovementArena(g, sigma, valuation);
}

std::vector<Switch>
improving_switches(const ParityGame& g, const Strategy& sigma, const GameValuation& valuation)
{
    std::vector<Switch> out;
    for (NodeId v = 0; v < g.size(); v++) {
        if (g.owner(v) != Player::Even) continue;
        for (NodeId u : g.successors(v))
            if (u != sigma[v] && compare_successors(g, valuation, v, sigma[v], u) < 0) out.push_back({v, u});
    }
    return out;
}

std::vector<NodeId>
even_cycle_nodes(const ParityGame& g, const GameValuation& valuation)
{
    std::vector<NodeId> out;
    for (NodeId v = 0; v < valuation.size(); v++)
        if (g.is_even(valuation[v].cycle)) out.push_back(v);
    return out;
}

std::uint64_t
digest(const GameValuation& valuation)
{
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t x) {
        for (int i = 0; i < 8; i++) {
            h ^= (x >> (8 * i)) & 0xFF;
            h *= 1099511628211ULL;
        }
    };
    mix(valuation.size());
    for (const auto& nv : valuation) {
        mix(nv.cycle);
        mix(nv.length);
        for (auto w : nv.path.words()) mix(w);
    }
    return h;
}

}  // namespace pgsi
