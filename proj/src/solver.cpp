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

#include "pgsi/solver.hpp"

#include <algorithm>
#include <string>

namespace pgsi {

namespace {

std::vector<Switch>
chosen_switches(const Strategy& from, const Strategy& to)
{
    std::vector<Switch> out;
    for (NodeId v = 0; v < from.size(); v++)
        if (from[v] != to[v]) out.push_back({v, to[v]});
    return out;
}

void
check_contract(const ParityGame& g, const Strategy& sigma, const GameValuation& val, const Strategy& next,
               bool improvable, std::uint64_t iteration)
{
    const auto where = " at iteration " + std::to_string(iteration);
    if (!next.is_valid(g)) throw PolicyContractViolation("policy returned an invalid strategy" + where);
    bool improved = false;
    for (NodeId v = 0; v < g.size(); v++) {
        if (g.owner(v) != Player::Even) continue;
        auto c = compare_successors(g, val, v, sigma[v], next[v]);
        if (c > 0)
            throw PolicyContractViolation("policy left the arena at node " + std::to_string(v) + where);
        if (c < 0) improved = true;
    }
    if (improvable && !improved) throw PolicyContractViolation("policy made no strict improvement" + where);
}

}  // namespace

SolveReport
solve(const ParityGame& g, const Strategy& initial, const PolicyKind& policy, const SolveOptions& options)
{
    initial.validate(g);
    if (initial.role() != Player::Even) throw GameError("initial strategy must belong to player 0");

    SolveReport report;
    Strategy sigma = initial;
    BestResponse br = best_response(g, sigma);
    for (std::uint64_t it = 0;; it++) {
        if (options.observer) options.observer(it, sigma, br.valuation);
        auto improving = improving_switches(g, sigma, br.valuation);
        const bool improvable = !improving.empty();

        Strategy next = improvable ? apply_policy(g, policy, sigma, br.valuation) : sigma;
        if (improvable) check_contract(g, sigma, br.valuation, next, improvable, it);

        if (options.record_trace) {
            TraceStep step;
            step.iteration = it;
            step.sigma = sigma;
            step.valuation_digest = digest(br.valuation);
            step.improving = std::move(improving);
            if (improvable) step.chosen = chosen_switches(sigma, next);
            if (options.full_trace) step.valuation = br.valuation;
            report.trace.push_back(std::move(step));
        }

        if (!improvable) {
            report.iterations = it;
            break;
        }
        if (it + 1 > options.iteration_cap)
            throw IterationCapExceeded("iteration cap " + std::to_string(options.iteration_cap) + " exceeded");

        BestResponse nbr = best_response(g, next);
        if (!strictly_dominated_by(g, br.valuation, nbr.valuation))
            throw PolicyContractViolation("valuation did not strictly increase at iteration " + std::to_string(it));
        sigma = std::move(next);
        br = std::move(nbr);
    }

    report.sigma = std::move(sigma);
    report.tau = std::move(br.tau);
    report.valuation = std::move(br.valuation);
    for (NodeId v = 0; v < g.size(); v++)
        (g.is_even(report.valuation[v].cycle) ? report.w0 : report.w1).push_back(v);
    return report;
}

std::optional<NodeId>
find_sink(const ParityGame& g)
{
    const NodeId v = g.at_rank(0);
    if (g.priority(v) != 1 || !g.has_edge(v, v)) return std::nullopt;

    // backwards reachability from v
    std::vector<std::vector<NodeId>> pred(g.size());
    for (NodeId u = 0; u < g.size(); u++)
        for (NodeId w : g.successors(u)) pred[w].push_back(u);
    std::vector<bool> seen(g.size(), false);
    std::vector<NodeId> todo{v};
    seen[v] = true;
    std::size_t reached = 1;
    while (!todo.empty()) {
        NodeId w = todo.back();
        todo.pop_back();
        for (NodeId u : pred[w])
            if (!seen[u]) {
                seen[u] = true;
                reached++;
                todo.push_back(u);
            }
    }
    if (reached != g.size()) return std::nullopt;
    return v;
}

OneSinkCertificate
validate_one_sink(const ParityGame& g, const Strategy& initial, std::uint64_t iteration_cap)
{
    OneSinkCertificate cert;
    auto sink = find_sink(g);
    cert.sink_existence = sink.has_value();
    if (sink) cert.sink = *sink;

    const GameValuation start = best_response(g, initial).valuation;
    cert.initial_cycle_components_ok =
        sink && std::all_of(start.begin(), start.end(), [&](const NodeValuation& nv) { return nv.cycle == *sink; });

    bool seeking = sink.has_value();
    SolveOptions opts;
    opts.iteration_cap = iteration_cap;
    opts.record_trace = false;
    opts.observer = [&](std::uint64_t, const Strategy&, const GameValuation& val) {
        if (!sink) return;
        for (const auto& nv : val)
            if (nv.cycle != *sink) seeking = false;
    };
    SolveReport rep = solve(g, initial, LocalPolicy{}, opts);
    cert.all_won_by_p1 = rep.w0.empty();
    cert.sink_seeking = seeking;
    cert.iterations = rep.iterations;
    return cert;
}

}  // namespace pgsi
