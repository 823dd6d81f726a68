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

#include "pgsi/payoff.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "pgsi/valuation.hpp"

namespace pgsi {

void
MeanPayoffGame::validate() const
{
    if (successors.size() != owners.size() || reward.size() != owners.size())
        throw GameError("payoff game tables have different sizes");
    if (owners.empty()) throw GameError("payoff game has no nodes");
    for (NodeId v = 0; v < owners.size(); v++) {
        if (successors[v].empty()) throw GameError("node " + std::to_string(v) + " has no successor");
        for (NodeId u : successors[v])
            if (u >= owners.size()) throw GameError("node " + std::to_string(v) + " has unknown successor");
    }
}

void
DiscountedPayoffGame::validate() const
{
    base.validate();
    if (sgn(beta) <= 0 || beta >= 1) throw GameError("discount must lie strictly between 0 and 1");
}

void
SimpleStochasticGame::validate() const
{
    const std::size_t n = kinds.size();
    if (successors.size() != n || probabilities.size() != n) throw GameError("stochastic game tables have different sizes");
    int sinks0 = 0, sinks1 = 0;
    for (NodeId v = 0; v < n; v++) {
        switch (kinds[v]) {
        case SsgKind::Sink0:
            sinks0++;
            if (v != sink0) throw GameError("sink 0 id mismatch");
            break;
        case SsgKind::Sink1:
            sinks1++;
            if (v != sink1) throw GameError("sink 1 id mismatch");
            break;
        default:
            if (successors[v].empty()) throw GameError("node " + std::to_string(v) + " has no successor");
            for (NodeId u : successors[v])
                if (u >= n) throw GameError("node " + std::to_string(v) + " has unknown successor");
        }
        if (kinds[v] == SsgKind::Avg) {
            if (probabilities[v].size() != successors[v].size())
                throw GameError("average node " + std::to_string(v) + " lacks probabilities");
            Rational total = 0;
            for (const auto& p : probabilities[v]) {
                if (sgn(p) < 0) throw GameError("negative probability at node " + std::to_string(v));
                total += p;
            }
            if (total != 1) throw GameError("probabilities at node " + std::to_string(v) + " do not sum to 1");
        }
    }
    if (sinks0 != 1 || sinks1 != 1) throw GameError("stochastic game needs exactly one sink of each kind");
}

MeanPayoffGame
to_mpg(const ParityGame& g)
{
    MeanPayoffGame m;
    const Integer base = -static_cast<long>(g.size());
    for (NodeId v = 0; v < g.size(); v++) {
        m.owners.push_back(g.owner(v));
        m.successors.emplace_back(g.successors(v).begin(), g.successors(v).end());
        Integer r;
        mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), g.priority(v));
        m.reward.push_back(r);
    }
    return m;
}

DiscountedPayoffGame
to_dpg(const MeanPayoffGame& m)
{
    m.validate();
    Integer max_abs = 0;
    for (const auto& r : m.reward) max_abs = std::max<Integer>(max_abs, abs(r));
    if (max_abs == 0) max_abs = 1;
    const Integer n = static_cast<unsigned long>(m.size());
    Rational beta = 1 - Rational(1, Integer(4 * n * n * n * max_abs));
    beta.canonicalize();
    return DiscountedPayoffGame{m, beta};
}

namespace {

NodeId
move(const MeanPayoffGame& m, const Strategy& sigma, const Strategy& tau, NodeId v)
{
    return m.owners[v] == Player::Even ? sigma[v] : tau[v];
}

void
check_strategy(const MeanPayoffGame& m, const Strategy& s, Player role)
{
    if (s.size() != m.size()) throw GameError("strategy size does not match game");
    for (NodeId v = 0; v < m.size(); v++) {
        if (m.owners[v] != role) continue;
        const auto& succ = m.successors[v];
        if (std::find(succ.begin(), succ.end(), s[v]) == succ.end())
            throw GameError("strategy move at node " + std::to_string(v) + " is not an edge");
    }
}

/// Walks the functional graph; calls on_cycle(nodes in play order) once per cycle, then on_tail(v, succ) for tails.
template <typename Cycle, typename Tail>
void
walk_lassos(std::size_t n, const std::function<NodeId(NodeId)>& next, Cycle on_cycle, Tail on_tail)
{
    enum : std::uint8_t { Fresh, OnStack, Done };
    std::vector<std::uint8_t> state(n, Fresh);
    std::vector<NodeId> stack;
    for (NodeId start = 0; start < n; start++) {
        if (state[start] != Fresh) continue;
        NodeId u = start;
        while (state[u] == Fresh) {
            state[u] = OnStack;
            stack.push_back(u);
            u = next(u);
        }
        if (state[u] == OnStack) {
            auto it = std::find(stack.begin(), stack.end(), u);
            std::vector<NodeId> cycle(it, stack.end());
            on_cycle(cycle);
            for (NodeId c : cycle) state[c] = Done;
            stack.erase(it, stack.end());
        }
        while (!stack.empty()) {
            NodeId x = stack.back();
            stack.pop_back();
            on_tail(x, next(x));
            state[x] = Done;
        }
    }
}

}  // namespace

ValueAssignment
dpg_evaluate(const DiscountedPayoffGame& d, const Strategy& sigma, const Strategy& tau)
{
    const MeanPayoffGame& m = d.base;
    check_strategy(m, sigma, Player::Even);
    check_strategy(m, tau, Player::Odd);
    ValueAssignment val(m.size());
    const Rational& beta = d.beta;
    walk_lassos(
        m.size(), [&](NodeId v) { return move(m, sigma, tau, v); },
        [&](const std::vector<NodeId>& cycle) {
            const std::size_t len = cycle.size();
            Rational sum = 0, power = 1;
            for (NodeId w : cycle) {
                sum += power * m.reward[w];
                power *= beta;
            }
            val[cycle[0]] = sum / (1 - power);
            for (std::size_t i = len; i-- > 1;) val[cycle[i]] = m.reward[cycle[i]] + beta * val[cycle[(i + 1) % len]];
        },
        [&](NodeId v, NodeId u) { val[v] = m.reward[v] + beta * val[u]; });
    return val;
}

namespace {

Strategy
first_successor(const MeanPayoffGame& m, Player role)
{
    std::vector<NodeId> choice(m.size(), kNoNode);
    for (NodeId v = 0; v < m.size(); v++)
        if (m.owners[v] == role) choice[v] = m.successors[v].front();
    return Strategy(role, std::move(choice));
}

/// Index of the successor with the least (minimize) or greatest value; ties to the smallest id.
NodeId
extreme_successor(const std::vector<NodeId>& succ, const ValueAssignment& val, bool minimize)
{
    NodeId best = kNoNode;
    for (NodeId u : succ) {
        if (best == kNoNode) {
            best = u;
            continue;
        }
        const int c = cmp(val[u], val[best]);
        if ((minimize ? c < 0 : c > 0) || (c == 0 && u < best)) best = u;
    }
    return best;
}

}  // namespace

PayoffResponse
dpg_best_response(const DiscountedPayoffGame& d, const Strategy& sigma)
{
    const MeanPayoffGame& m = d.base;
    Strategy tau = first_successor(m, Player::Odd);
    for (;;) {
        ValueAssignment val = dpg_evaluate(d, sigma, tau);
        bool changed = false;
        for (NodeId v = 0; v < m.size(); v++) {
            if (m.owners[v] != Player::Odd) continue;
            const NodeId best = extreme_successor(m.successors[v], val, true);
            if (val[best] < val[tau[v]]) {
                tau.set(v, best);
                changed = true;
            }
        }
        if (!changed) return PayoffResponse{std::move(tau), std::move(val)};
    }
}

namespace {

/// One locally optimizing step for the maximizer; ties keep the current choice.
Strategy
local_max_step(const std::vector<std::vector<NodeId>>& successors, const std::vector<bool>& is_max,
               const Strategy& sigma, const ValueAssignment& val, std::vector<Switch>& improving)
{
    Strategy next = sigma;
    for (NodeId v = 0; v < successors.size(); v++) {
        if (!is_max[v]) continue;
        NodeId best = sigma[v];
        for (NodeId u : successors[v]) {
            const int c = cmp(val[u], val[best]);
            if (c > 0 || (c == 0 && best != sigma[v] && u < best)) best = u;
            if (u != sigma[v] && val[u] > val[sigma[v]]) improving.push_back({v, u});
        }
        next.set(v, best);
    }
    std::sort(improving.begin(), improving.end());
    return next;
}

}  // namespace

PayoffSolveReport
puri_solve(const DiscountedPayoffGame& d, const Strategy& initial, std::uint64_t iteration_cap)
{
    d.validate();
    const MeanPayoffGame& m = d.base;
    check_strategy(m, initial, Player::Even);
    std::vector<bool> is_max(m.size());
    for (NodeId v = 0; v < m.size(); v++) is_max[v] = m.owners[v] == Player::Even;

    PayoffSolveReport rep;
    Strategy sigma = initial;
    for (std::uint64_t it = 0;; it++) {
        PayoffResponse br = dpg_best_response(d, sigma);
        std::vector<Switch> improving;
        Strategy next = local_max_step(m.successors, is_max, sigma, br.values, improving);
        const bool done = improving.empty();
        rep.trace.push_back({sigma, std::move(improving)});
        if (done) {
            rep.iterations = it;
            rep.sigma = std::move(sigma);
            rep.tau = std::move(br.tau);
            rep.values = std::move(br.values);
            return rep;
        }
        if (it + 1 > iteration_cap) throw IterationCapExceeded("iteration cap exceeded");
        sigma = std::move(next);
    }
}

ValueAssignment
mpg_values_from_optimal(const MeanPayoffGame& m, const Strategy& sigma, const Strategy& rho)
{
    check_strategy(m, sigma, Player::Even);
    check_strategy(m, rho, Player::Odd);
    ValueAssignment val(m.size());
    walk_lassos(
        m.size(), [&](NodeId v) { return move(m, sigma, rho, v); },
        [&](const std::vector<NodeId>& cycle) {
            Rational sum = 0;
            for (NodeId w : cycle) sum += m.reward[w];
            sum /= static_cast<unsigned long>(cycle.size());
            for (NodeId w : cycle) val[w] = sum;
        },
        [&](NodeId v, NodeId u) { val[v] = val[u]; });
    return val;
}

InducedSsg
to_ssg(const DiscountedPayoffGame& d)
{
    d.validate();
    const MeanPayoffGame& m = d.base;
    InducedSsg out;
    out.beta = d.beta;
    out.original_nodes = m.size();
    out.l = *std::min_element(m.reward.begin(), m.reward.end());
    out.u = *std::max_element(m.reward.begin(), m.reward.end());
    out.d = std::max<Integer>(1, out.u - out.l);

    std::size_t edges = 0;
    for (const auto& s : m.successors) edges += s.size();
    const std::size_t total = m.size() + edges + 2;
    SimpleStochasticGame& s = out.game;
    s.kinds.resize(total);
    s.successors.resize(total);
    s.probabilities.resize(total);
    s.sink0 = static_cast<NodeId>(m.size() + edges);
    s.sink1 = s.sink0 + 1;
    s.kinds[s.sink0] = SsgKind::Sink0;
    s.kinds[s.sink1] = SsgKind::Sink1;

    const Rational one_minus = 1 - d.beta;
    NodeId next = static_cast<NodeId>(m.size());
    out.avg_node.resize(m.size());
    for (NodeId v = 0; v < m.size(); v++) {
        s.kinds[v] = m.owners[v] == Player::Even ? SsgKind::Max : SsgKind::Min;
        Rational to_one = one_minus * Rational(m.reward[v] - out.l, out.d);
        to_one.canonicalize();
        Rational to_zero = one_minus - to_one;
        for (NodeId u : m.successors[v]) {
            const NodeId a = next++;
            out.avg_node[v].push_back(a);
            s.successors[v].push_back(a);
            s.kinds[a] = SsgKind::Avg;
            s.successors[a] = {u, s.sink1, s.sink0};
            s.probabilities[a] = {d.beta, to_one, to_zero};
        }
    }
    return out;
}

Strategy
lift_strategy(const InducedSsg& s, const Strategy& base)
{
    std::vector<NodeId> choice(s.game.size(), kNoNode);
    for (NodeId v = 0; v < s.original_nodes; v++) {
        if (base[v] == kNoNode) continue;
        const auto& succ = s.game.successors[v];
        for (std::size_t j = 0; j < succ.size(); j++)
            if (s.game.successors[succ[j]][0] == base[v]) choice[v] = succ[j];
        if (choice[v] == kNoNode) throw GameError("strategy move at node " + std::to_string(v) + " is not an edge");
    }
    return Strategy(base.role(), std::move(choice));
}

Strategy
lower_strategy(const InducedSsg& s, const Strategy& lifted, Player role)
{
    std::vector<NodeId> choice(s.original_nodes, kNoNode);
    for (NodeId v = 0; v < s.original_nodes; v++)
        if (lifted[v] != kNoNode) choice[v] = s.game.successors[lifted[v]][0];
    return Strategy(role, std::move(choice));
}

Strategy
ssg_first_successor(const SimpleStochasticGame& s, Player role)
{
    const SsgKind kind = role == Player::Even ? SsgKind::Max : SsgKind::Min;
    std::vector<NodeId> choice(s.size(), kNoNode);
    for (NodeId v = 0; v < s.size(); v++)
        if (s.kinds[v] == kind) choice[v] = s.successors[v].front();
    return Strategy(role, std::move(choice));
}

ValueAssignment
ssg_evaluate(const SimpleStochasticGame& s, const Strategy& max_strategy, const Strategy& min_strategy)
{
    const std::size_t n = s.size();
    // rows: φ(v) - Σ coeff φ(u) = rhs
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    std::vector<Rational> rhs(n);
    for (NodeId v = 0; v < n; v++) {
        a[v][v] = 1;
        switch (s.kinds[v]) {
        case SsgKind::Sink0: break;
        case SsgKind::Sink1: rhs[v] = 1; break;
        case SsgKind::Max:
        case SsgKind::Min: {
            const NodeId t = s.kinds[v] == SsgKind::Max ? max_strategy[v] : min_strategy[v];
            const auto& succ = s.successors[v];
            if (std::find(succ.begin(), succ.end(), t) == succ.end())
                throw GameError("strategy move at node " + std::to_string(v) + " is not an edge");
            a[v][t] -= 1;
            break;
        }
        case SsgKind::Avg:
            for (std::size_t j = 0; j < s.successors[v].size(); j++) a[v][s.successors[v][j]] -= s.probabilities[v][j];
            break;
        }
    }
    // Gauss-Jordan elimination, pivot = first row (by index) with a nonzero entry
    for (std::size_t col = 0; col < n; col++) {
        std::size_t piv = col;
        while (piv < n && sgn(a[piv][col]) == 0) piv++;
        if (piv == n) throw std::logic_error("stochastic game does not halt under the given strategies");
        std::swap(a[piv], a[col]);
        std::swap(rhs[piv], rhs[col]);
        const Rational inv = 1 / a[col][col];
        for (std::size_t k = col; k < n; k++)
            if (sgn(a[col][k]) != 0) a[col][k] *= inv;
        rhs[col] *= inv;
        for (std::size_t row = 0; row < n; row++) {
            if (row == col || sgn(a[row][col]) == 0) continue;
            const Rational f = a[row][col];
            for (std::size_t k = col; k < n; k++)
                if (sgn(a[col][k]) != 0) a[row][k] -= f * a[col][k];
            rhs[row] -= f * rhs[col];
        }
    }
    return rhs;
}

PayoffResponse
ssg_best_response(const SimpleStochasticGame& s, const Strategy& max_strategy)
{
    Strategy tau = ssg_first_successor(s, Player::Odd);
    for (;;) {
        ValueAssignment val = ssg_evaluate(s, max_strategy, tau);
        bool changed = false;
        for (NodeId v = 0; v < s.size(); v++) {
            if (s.kinds[v] != SsgKind::Min) continue;
            const NodeId best = extreme_successor(s.successors[v], val, true);
            if (val[best] < val[tau[v]]) {
                tau.set(v, best);
                changed = true;
            }
        }
        if (!changed) return PayoffResponse{std::move(tau), std::move(val)};
    }
}

PayoffSolveReport
ssg_solve(const SimpleStochasticGame& s, const Strategy& initial, std::uint64_t iteration_cap)
{
    s.validate();
    std::vector<bool> is_max(s.size());
    for (NodeId v = 0; v < s.size(); v++) is_max[v] = s.kinds[v] == SsgKind::Max;

    PayoffSolveReport rep;
    Strategy sigma = initial;
    for (std::uint64_t it = 0;; it++) {
        PayoffResponse br = ssg_best_response(s, sigma);
        std::vector<Switch> improving;
        Strategy next = local_max_step(s.successors, is_max, sigma, br.values, improving);
        const bool done = improving.empty();
        rep.trace.push_back({sigma, std::move(improving)});
        if (done) {
            rep.iterations = it;
            rep.sigma = std::move(sigma);
            rep.tau = std::move(br.tau);
            rep.values = std::move(br.values);
            return rep;
        }
        if (it + 1 > iteration_cap) throw IterationCapExceeded("iteration cap exceeded");
        sigma = std::move(next);
    }
}

CorrespondenceReport
check_switch_correspondence(const ParityGame& g, const DiscountedPayoffGame& d, const std::vector<TraceStep>& trace)
{
    CorrespondenceReport rep;
    const auto sink = find_sink(g);
    if (!sink) {
        rep.violations.push_back("game has no sink");
        return rep;
    }
    std::vector<NodeId> order(g.size());
    for (const TraceStep& step : trace) {
        const std::string at = "iteration " + std::to_string(step.iteration) + ": ";
        const BestResponse pb = best_response(g, step.sigma);
        const PayoffResponse db = dpg_best_response(d, step.sigma);
        if (pb.tau != db.tau) rep.violations.push_back(at + "counterstrategies differ");

        const GameValuation plays = evaluate_all(g, step.sigma, db.tau);
        for (NodeId v = 0; v < g.size(); v++)
            if (plays[v].cycle != *sink) {
                rep.violations.push_back(at + "play from node " + std::to_string(v) + " avoids the sink");
                break;
            }

        std::iota(order.begin(), order.end(), NodeId{0});
        std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
            return compare_valuations(g, pb.valuation[a], pb.valuation[b]) < 0;
        });
        for (std::size_t i = 0; i + 1 < order.size(); i++) {
            const NodeId a = order[i], b = order[i + 1];
            const bool parity_less = compare_valuations(g, pb.valuation[a], pb.valuation[b]) < 0;
            const bool value_less = db.values[a] < db.values[b];
            const bool value_equal = db.values[a] == db.values[b];
            if (parity_less != value_less || (!parity_less && !value_equal)) {
                rep.violations.push_back(at + "order of nodes " + std::to_string(a) + " and " + std::to_string(b) +
                                         " differs between valuation and discounted value");
                break;
            }
        }
        rep.steps_checked++;
    }
    return rep;
}

std::string
rational_text(const Rational& q)
{
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational
parse_rational(const std::string& text)
{
    Rational q;
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            q = Rational(Integer(text));
        } else {
            Integer num(text.substr(0, slash)), den(text.substr(slash + 1));
            if (den == 0) throw GameError("zero denominator in '" + text + "'");
            q = Rational(num, den);
            q.canonicalize();
        }
    } catch (const std::invalid_argument&) {
        throw GameError("malformed rational '" + text + "'");
    }
    return q;
}

}  // namespace pgsi
