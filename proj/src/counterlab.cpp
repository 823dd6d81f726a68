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

#include "pgsi/counterlab.hpp"

#include <algorithm>
#include <set>

namespace pgsi {

std::uint32_t
least_unset(const Bits& b)
{
    for (std::size_t i = 0; i < b.size(); i++)
        if (b[i] == 0) return static_cast<std::uint32_t>(i + 1);
    return static_cast<std::uint32_t>(b.size() + 1);
}

std::uint32_t
least_set(const Bits& b)
{
    for (std::size_t i = 0; i < b.size(); i++)
        if (b[i] != 0) return static_cast<std::uint32_t>(i + 1);
    return static_cast<std::uint32_t>(b.size() + 1);
}

Bits
increment(const Bits& b)
{
    Bits out = b;
    for (auto& bit : out) {
        if (bit == 0) {
            bit = 1;
            return out;
        }
        bit = 0;
    }
    return out;
}

std::uint64_t
to_integer(const Bits& b)
{
    std::uint64_t v = 0;
    for (std::size_t i = b.size(); i-- > 0;) v = (v << 1) | (b[i] != 0 ? 1U : 0U);
    return v;
}

std::string
to_string(const Bits& b)
{
    std::string s;
    for (std::size_t i = b.size(); i-- > 0;) s += static_cast<char>('0' + b[i]);
    return s;
}

BitState
bit_state(const ParityGame& g, const RoleMap& roles, const Strategy& sigma)
{
    if (roles.size() != g.size()) throw GameError("role map does not belong to this game");
    const std::uint32_t n = roles.n();
    BitState st{Bits(n, 0), Bits(n, 0)};
    for (std::uint32_t i = 1; i <= n; i++) {
        const NodeId gi = roles.node(Role::G, i);
        if (roles.family() == Family::Locally) {
            st.bits[i - 1] = sigma[roles.node(Role::D, i)] == roles.node(Role::E, i);
            st.access[i - 1] = sigma[gi] == roles.node(Role::F, i);
            continue;
        }
        const NodeId d1 = roles.node(Role::D1, i), d2 = roles.node(Role::D2, i), d3 = roles.node(Role::D3, i);
        const NodeId y = roles.node(Role::Y, i), k = roles.node(Role::K, i);
        st.bits[i - 1] = static_cast<std::uint8_t>((sigma[d1] == d2) + (sigma[d2] == d3) +
                                                   (sigma[d3] == roles.node(Role::E, i)));
        if (sigma[gi] == y) st.access[i - 1] = 2;
        else if (sigma[gi] == k && sigma[y] == k) st.access[i - 1] = 0;
        else st.access[i - 1] = 1;
    }
    return st;
}

std::optional<DecelerationState>
deceleration_state(const ParityGame& g, const RoleMap& roles, const Strategy& sigma)
{
    if (roles.size() != g.size()) throw GameError("role map does not belong to this game");
    const std::uint32_t m = roles.lane_length();
    const NodeId s = roles.node(Role::S), r = roles.node(Role::R), c = roles.node(Role::C);
    auto t = [&](std::uint32_t i) { return sigma[roles.node(Role::T, i)]; };

    std::uint32_t j = 1;
    if (t(1) == c) {
        j = 2;
        while (j <= m && t(j) == roles.node(Role::T, j - 1)) j++;
    }
    NodeId root;
    if (j <= m) root = t(j);
    else if (roles.family() == Family::Locally) root = sigma[c];
    else root = r;
    if (root != s && root != r) return std::nullopt;
    if (roles.family() == Family::Locally && sigma[c] != root) return std::nullopt;
    for (std::uint32_t i = j; i <= m; i++)
        if (t(i) != root) return std::nullopt;
    return DecelerationState{root == s ? Role::S : Role::R, j};
}

RootTargets
root_targets(const ParityGame& g, const RoleMap& roles, const Strategy& sigma)
{
    if (roles.size() != g.size()) throw GameError("role map does not belong to this game");
    const std::uint32_t n = roles.n();
    auto decode = [&](NodeId target) -> std::uint32_t {
        const RoleTag tag = roles.tag(target);
        return tag.role == Role::X ? n + 1 : tag.index;
    };
    RootTargets rt;
    rt.s = decode(sigma[roles.node(Role::S)]);
    rt.r = decode(sigma[roles.node(Role::R)]);
    for (std::uint32_t i = 1; i <= n; i++) rt.k.push_back(decode(sigma[roles.node(Role::K, i)]));
    return rt;
}

namespace {

std::uint32_t
next_set_above(const Bits& b, std::uint32_t i)
{
    for (std::uint32_t j = i + 1; j <= b.size(); j++)
        if (b[j - 1] != 0) return j;
    return static_cast<std::uint32_t>(b.size() + 1);
}

struct Decoded {
    const ParityGame* g;
    const RoleMap* roles;
    const Strategy* sigma;
    BitState st;
    std::optional<DecelerationState> dec;
    RootTargets rt;

    NodeId d(std::uint32_t j) const { return (*sigma)[roles->node(Role::D, j)]; }
    bool d_is_lane(std::uint32_t j, std::uint32_t lane) const
    {
        return lane >= 1 && lane <= roles->lane_length() && d(j) == roles->node(Role::A, lane);
    }

    bool selectors_follow(const Bits& b) const
    {
        for (std::uint32_t i = 1; i <= b.size(); i++)
            if (rt.k[i - 1] != next_set_above(b, i)) return false;
        return true;
    }
};

bool
matches(const Decoded& x, Phase phase, const Bits& b)
{
    const std::uint32_t n = static_cast<std::uint32_t>(b.size());
    const std::uint32_t mu = least_unset(b), nu = least_set(b);
    if (!x.dec) return false;
    const std::uint32_t ind = x.dec->index;
    Bits set_mu = b;
    if (mu <= n) set_mu[mu - 1] = 1;

    switch (phase) {
    case Phase::One:
        if (x.st.bits != b || x.st.access != b) return false;
        if (x.dec->root != Role::R || x.rt.s != nu || x.rt.r != nu || !x.selectors_follow(b)) return false;
        if (ind > 2 * mu + 2) return false;
        for (std::uint32_t j = 1; j <= n; j++)
            if (b[j - 1] == 0 && x.d_is_lane(j, ind - 1)) return false;
        return true;
    case Phase::Two:
        if (mu > n || x.st.bits != set_mu || x.st.access != b) return false;
        if (x.dec->root != Role::R || x.rt.s != nu || x.rt.r != nu || !x.selectors_follow(b)) return false;
        if (ind > 2 * mu + 3) return false;
        for (std::uint32_t j = mu + 1; j <= n; j++)
            if (b[j - 1] == 0 && x.d_is_lane(j, ind - 1)) return false;
        return true;
    case Phase::Three:
        if (mu > n || x.st.bits != set_mu || x.st.access != set_mu) return false;
        if (x.dec->root != Role::R || x.rt.s != mu || x.rt.r != nu || !x.selectors_follow(b)) return false;
        for (std::uint32_t j = mu + 1; j <= n; j++)
            if (b[j - 1] == 0 && x.d(j) == x.roles->node(Role::S)) return false;
        return true;
    case Phase::Four: {
        if (mu > n) return false;
        const Bits next = increment(b);
        if (x.st.bits != next || x.st.access != set_mu) return false;
        if (x.dec->root != Role::S || x.rt.s != mu || x.rt.r != mu || !x.selectors_follow(next)) return false;
        if (ind != 1) return false;
        for (std::uint32_t j = 1; j <= n; j++)
            if (next[j - 1] == 0 && x.d(j) != x.roles->node(Role::S)) return false;
        return true;
    }
    default:
        return false;
    }
}

}  // namespace

PhaseReport
classify_phase(const ParityGame& g, const RoleMap& roles, const Strategy& sigma)
{
    Decoded x{&g, &roles, &sigma, bit_state(g, roles, sigma), deceleration_state(g, roles, sigma),
              root_targets(g, roles, sigma)};
    PhaseReport rep;
    rep.observed = x.st;
    rep.deceleration = x.dec;
    rep.targets = x.rt;
    if (roles.family() != Family::Locally) return rep;

    const Bits& bs = x.st.bits;
    std::vector<std::pair<Phase, Bits>> candidates{{Phase::One, bs}, {Phase::Two, x.st.access}};
    // phase 3: b_σ = b[μb ↦ 1], so b is b_σ with one bit cleared whose lower bits are all set
    for (std::uint32_t j = 1; j <= bs.size() && bs[j - 1] != 0; j++) {
        Bits b = bs;
        b[j - 1] = 0;
        candidates.emplace_back(Phase::Three, b);
    }
    if (to_integer(bs) != 0) {
        // phase 4: b_σ = b ⊕ 1
        Bits b = bs;
        for (auto& bit : b) {
            if (bit != 0) {
                bit = 0;
                break;
            }
            bit = 1;
        }
        candidates.emplace_back(Phase::Four, b);
    }

    int found = 0;
    for (const auto& [phase, b] : candidates) {
        if (!matches(x, phase, b)) continue;
        if (found++ == 0) {
            rep.phase = phase;
            rep.counter = b;
        }
    }
    if (found != 1) {
        rep.phase = Phase::Unclassified;
        rep.counter.clear();
    }
    return rep;
}

namespace {

bool
top_bits_clear(const Bits& b, std::uint32_t counting)
{
    for (std::size_t i = counting; i < b.size(); i++)
        if (b[i] != 0) return false;
    return true;
}

Bits
low_bits(const Bits& b, std::uint32_t counting)
{
    return Bits(b.begin(), b.begin() + counting);
}

std::string
phase_text(Phase p)
{
    return p == Phase::Unclassified ? "unclassified" : "phase " + std::to_string(static_cast<int>(p));
}

void
check_locally(const std::vector<TraceStep>& trace, const ParityGame& g, const RoleMap& roles, CounterReport& rep)
{
    const std::uint32_t counting = rep.counting_bits;
    std::optional<PhaseReport> prev;
    std::optional<std::uint64_t> last_value;
    for (const TraceStep& step : trace) {
        PhaseReport cur = classify_phase(g, roles, step.sigma);
        const bool inside = cur.phase != Phase::Unclassified
            ? top_bits_clear(cur.counter, counting)
            : top_bits_clear(cur.observed.bits, counting) && top_bits_clear(cur.observed.access, counting);
        if (!inside) break;
        rep.phases.push_back(cur.phase);
        const std::uint64_t it = step.iteration;
        if (cur.phase == Phase::Unclassified) {
            rep.violations.push_back({it, "strategy matches no phase"});
            prev.reset();
            continue;
        }
        if (cur.phase == Phase::Four) rep.increments++;
        if (cur.phase == Phase::One) {
            const std::uint64_t v = to_integer(low_bits(cur.counter, counting));
            if (!last_value || *last_value != v) {
                if (last_value && v != *last_value + 1)
                    rep.violations.push_back({it, "counter moved from " + std::to_string(*last_value) + " to " +
                                                      std::to_string(v)});
                if (!last_value && v != 0)
                    rep.violations.push_back({it, "counter starts at " + std::to_string(v)});
                rep.values.push_back(v);
                last_value = v;
            }
        }
        if (prev) {
            const Phase a = prev->phase, b = cur.phase;
            const std::uint32_t ia = prev->deceleration->index, ib = cur.deceleration->index;
            bool ok = false;
            if (a == Phase::One && b == Phase::One) ok = cur.counter == prev->counter && ib == ia + 1;
            else if ((a == Phase::One && b == Phase::Two) || (a == Phase::Two && b == Phase::Three) ||
                     (a == Phase::Three && b == Phase::Four))
                ok = cur.counter == prev->counter;
            else if (a == Phase::Four && b == Phase::One) ok = cur.counter == increment(prev->counter) && ib == 1;
            if (!ok)
                rep.violations.push_back({it, "transition " + phase_text(a) + " (b=" + to_string(prev->counter) +
                                                  ") to " + phase_text(b) + " (b=" + to_string(cur.counter) +
                                                  ") matches no counting step"});
        }
        prev = std::move(cur);
    }
}

void
check_globally(const std::vector<TraceStep>& trace, const ParityGame& g, const RoleMap& roles, CounterReport& rep)
{
    std::optional<std::uint64_t> last_value;
    for (const TraceStep& step : trace) {
        const BitState st = bit_state(g, roles, step.sigma);
        Bits bits(st.bits.size(), 0);
        bool stable = true;
        for (std::size_t i = 0; i < st.bits.size(); i++) {
            if (st.bits[i] == 3 && st.access[i] == 2) bits[i] = 1;
            else if (!(st.bits[i] == 1 && st.access[i] == 0)) stable = false;
        }
        if (!stable) continue;
        const std::uint64_t v = to_integer(bits);
        if (last_value && *last_value == v) continue;
        if (last_value && v != *last_value + 1)
            rep.violations.push_back({step.iteration, "stable counter moved from " + std::to_string(*last_value) +
                                                          " to " + std::to_string(v)});
        if (!last_value && v != 0) rep.violations.push_back({step.iteration, "counter starts at " + std::to_string(v)});
        if (last_value) rep.increments++;
        rep.values.push_back(v);
        last_value = v;
    }
}

}  // namespace

CounterReport
check_counter_trace(const std::vector<TraceStep>& trace, const ParityGame& g, const RoleMap& roles)
{
    if (roles.size() != g.size()) throw GameError("role map does not belong to this game");
    CounterReport rep;
    rep.family = roles.family();
    const std::uint32_t n = roles.n();
    rep.counting_bits = n >= 2 ? n - 2 : 0;
    rep.iterations = trace.empty() ? 0 : trace.back().iteration;

    if (rep.family == Family::Locally) check_locally(trace, g, roles, rep);
    else check_globally(trace, g, roles, rep);

    const std::uint64_t needed = std::uint64_t{1} << rep.counting_bits;
    if (rep.values.size() < needed)
        rep.violations.push_back({rep.iterations, "counter attained " + std::to_string(rep.values.size()) +
                                                      " values, expected at least " + std::to_string(needed)});
    return rep;
}

}  // namespace pgsi
