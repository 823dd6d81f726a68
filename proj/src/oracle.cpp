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

#include "pgsi/oracle.hpp"

#include <functional>
#include <limits>
#include <string>

namespace pgsi {

namespace {

/// Odometer over choice lists; owned[i] is a node, options[i] its candidate moves.
void
enumerate(Player role, std::size_t size, const std::vector<NodeId>& owned,
          const std::vector<std::vector<NodeId>>& options, const std::function<void(const Strategy&)>& visit)
{
    std::vector<NodeId> choice(size, kNoNode);
    std::vector<std::size_t> idx(owned.size(), 0);
    for (std::size_t i = 0; i < owned.size(); i++) choice[owned[i]] = options[i][0];
    for (;;) {
        visit(Strategy(role, choice));
        std::size_t i = 0;
        while (i < owned.size()) {
            if (++idx[i] < options[i].size()) {
                choice[owned[i]] = options[i][idx[i]];
                break;
            }
            idx[i] = 0;
            choice[owned[i]] = options[i][0];
            i++;
        }
        if (i == owned.size()) return;
    }
}

std::uint64_t
product(const std::vector<std::vector<NodeId>>& options)
{
    std::uint64_t total = 1;
    for (const auto& o : options) {
        if (total > std::numeric_limits<std::uint64_t>::max() / o.size()) return std::numeric_limits<std::uint64_t>::max();
        total *= o.size();
    }
    return total;
}

void
collect(const ParityGame& g, Player p, std::vector<NodeId>& owned, std::vector<std::vector<NodeId>>& options)
{
    for (NodeId v = 0; v < g.size(); v++) {
        if (g.owner(v) != p) continue;
        owned.push_back(v);
        options.emplace_back(g.successors(v).begin(), g.successors(v).end());
    }
}

}  // namespace

std::uint64_t
strategy_count(const ParityGame& g, Player p)
{
    std::vector<NodeId> owned;
    std::vector<std::vector<NodeId>> options;
    collect(g, p, owned, options);
    return product(options);
}

void
for_each_strategy(const ParityGame& g, Player p, const std::function<void(const Strategy&)>& visit)
{
    std::vector<NodeId> owned;
    std::vector<std::vector<NodeId>> options;
    collect(g, p, owned, options);
    enumerate(p, g.size(), owned, options, visit);
}

GameValuation
brute_force_valuation(const ParityGame& g, const Strategy& sigma)
{
    GameValuation best;
    std::vector<GameValuation> all;
    for_each_strategy(g, Player::Odd, [&](const Strategy& tau) {
        GameValuation val(g.size());
        for (NodeId v = 0; v < g.size(); v++) val[v] = evaluate_play(g, sigma, tau, v);
        if (best.empty()) best = val;
        for (NodeId v = 0; v < g.size(); v++)
            if (compare_valuations(g, val[v], best[v]) < 0) best[v] = val[v];
        all.push_back(std::move(val));
    });
    for (const auto& val : all)
        if (val == best) return best;
    throw std::logic_error("no counterstrategy attains the nodewise minimum");
}

BruteForceResult
brute_force_parity(const ParityGame& g, std::uint64_t cap)
{
    const std::uint64_t c0 = strategy_count(g, Player::Even), c1 = strategy_count(g, Player::Odd);
    if (c0 > cap || c1 > cap || c0 * c1 > cap)
        throw SearchSpaceOverflow("strategy space too large for exhaustive search");

    BruteForceResult res;
    std::vector<std::pair<Strategy, GameValuation>> all;
    GameValuation top;
    for_each_strategy(g, Player::Even, [&](const Strategy& sigma) {
        GameValuation val = brute_force_valuation(g, sigma);
        if (top.empty()) top = val;
        for (NodeId v = 0; v < g.size(); v++)
            if (compare_valuations(g, val[v], top[v]) > 0) top[v] = val[v];
        all.emplace_back(sigma, std::move(val));
    });
    bool attained = false;
    for (auto& [sigma, val] : all)
        if (val == top) {
            res.sigma = sigma;
            attained = true;
            break;
        }
    if (!attained) throw std::logic_error("no strategy attains the nodewise maximum");
    res.valuation = std::move(top);
    for (NodeId v = 0; v < g.size(); v++) (g.is_even(res.valuation[v].cycle) ? res.w0 : res.w1).push_back(v);
    return res;
}

Strategy
brute_force_global(const ParityGame& g, const Strategy& sigma, const GameValuation& valuation, std::uint64_t cap)
{
    std::vector<NodeId> owned;
    std::vector<std::vector<NodeId>> options;
    for (NodeId v = 0; v < g.size(); v++) {
        if (g.owner(v) != Player::Even) continue;
        owned.push_back(v);
        std::vector<NodeId> allowed;
        for (NodeId u : g.successors(v))
            if (compare_successors(g, valuation, v, sigma[v], u) <= 0) allowed.push_back(u);
        options.push_back(std::move(allowed));
    }
    if (product(options) > cap) throw SearchSpaceOverflow("arena has too many strategies");

    std::vector<std::pair<Strategy, GameValuation>> all;
    GameValuation top;
    enumerate(Player::Even, g.size(), owned, options, [&](const Strategy& s) {
        GameValuation val = brute_force_valuation(g, s);
        if (top.empty()) top = val;
        for (NodeId v = 0; v < g.size(); v++)
            if (compare_valuations(g, val[v], top[v]) > 0) top[v] = val[v];
        all.emplace_back(s, std::move(val));
    });
    const Strategy* best = nullptr;
    for (const auto& [s, val] : all)
        if (val == top && (best == nullptr || s.choices() < best->choices())) best = &s;
    if (best == nullptr) throw std::logic_error("arena has no ⊴-maximal strategy");
    return *best;
}

WinningSets
brute_force_winning_sets(const ParityGame& g, std::uint64_t cap)
{
    const std::uint64_t c0 = strategy_count(g, Player::Even), c1 = strategy_count(g, Player::Odd);
    if (c0 > cap || c1 > cap || c0 * c1 > cap)
        throw SearchSpaceOverflow("strategy space too large for exhaustive search");

    std::vector<Strategy> taus;
    for_each_strategy(g, Player::Odd, [&](const Strategy& tau) { taus.push_back(tau); });

    // winner of the play from v: parity of the highest priority on the cycle it reaches
    auto even_wins = [&](const Strategy& sigma, const Strategy& tau, NodeId v) {
        std::vector<int> seen(g.size(), -1);
        std::vector<NodeId> play;
        NodeId u = v;
        while (seen[u] < 0) {
            seen[u] = static_cast<int>(play.size());
            play.push_back(u);
            u = g.owner(u) == Player::Even ? sigma[u] : tau[u];
        }
        Priority top = 0;
        for (std::size_t i = static_cast<std::size_t>(seen[u]); i < play.size(); i++)
            top = std::max(top, g.priority(play[i]));
        return top % 2 == 0;
    };

    std::vector<bool> won(g.size(), false);
    for_each_strategy(g, Player::Even, [&](const Strategy& sigma) {
        for (NodeId v = 0; v < g.size(); v++) {
            if (won[v]) continue;
            bool all = true;
            for (const auto& tau : taus)
                if (!even_wins(sigma, tau, v)) {
                    all = false;
                    break;
                }
            if (all) won[v] = true;
        }
    });
    WinningSets ws;
    for (NodeId v = 0; v < g.size(); v++) (won[v] ? ws.w0 : ws.w1).push_back(v);
    return ws;
}

ValueAssignment
dpg_min_enumeration(const DiscountedPayoffGame& d, const Strategy& sigma, std::uint64_t cap)
{
    const MeanPayoffGame& m = d.base;
    std::vector<NodeId> owned;
    std::vector<std::vector<NodeId>> options;
    for (NodeId v = 0; v < m.size(); v++)
        if (m.owners[v] == Player::Odd) {
            owned.push_back(v);
            options.push_back(m.successors[v]);
        }
    if (product(options) > cap) throw SearchSpaceOverflow("too many player 1 strategies");
    ValueAssignment best;
    enumerate(Player::Odd, m.size(), owned, options, [&](const Strategy& tau) {
        ValueAssignment val = dpg_evaluate(d, sigma, tau);
        if (best.empty()) best = val;
        for (NodeId v = 0; v < m.size(); v++)
            if (val[v] < best[v]) best[v] = val[v];
    });
    return best;
}

ValueAssignment
ssg_min_enumeration(const SimpleStochasticGame& s, const Strategy& max_strategy, std::uint64_t cap)
{
    std::vector<NodeId> owned;
    std::vector<std::vector<NodeId>> options;
    for (NodeId v = 0; v < s.size(); v++)
        if (s.kinds[v] == SsgKind::Min) {
            owned.push_back(v);
            options.push_back(s.successors[v]);
        }
    if (product(options) > cap) throw SearchSpaceOverflow("too many Min strategies");
    ValueAssignment best;
    enumerate(Player::Odd, s.size(), owned, options, [&](const Strategy& tau) {
        ValueAssignment val = ssg_evaluate(s, max_strategy, tau);
        if (best.empty()) best = val;
        for (NodeId v = 0; v < s.size(); v++)
            if (val[v] < best[v]) best[v] = val[v];
    });
    return best;
}

}  // namespace pgsi
