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

#include "pgsi/families.hpp"

#include <algorithm>
#include <cctype>
#include <random>

namespace pgsi {

namespace {

constexpr std::size_t kRoleCount = 16;

const char* const kRoleNames[kRoleCount] = {"x", "s", "r", "c", "t", "a", "d", "d", "d", "d", "e", "y", "g", "k", "f", "h"};

bool
indexed(Role r)
{
    return r != Role::X && r != Role::S && r != Role::R && r != Role::C;
}

}  // namespace

std::string
role_label(RoleTag tag)
{
    std::string s = kRoleNames[static_cast<std::size_t>(tag.role)];
    if (indexed(tag.role)) s += std::to_string(tag.index);
    switch (tag.role) {
    case Role::D1: s += "^1"; break;
    case Role::D2: s += "^2"; break;
    case Role::D3: s += "^3"; break;
    default: break;
    }
    return s;
}

std::optional<RoleTag>
parse_role_label(const std::string& label)
{
    if (label.empty()) return std::nullopt;
    static const std::string letters = "xsrctadeygkfh";
    if (label.size() == 1) {
        switch (label[0]) {
        case 'x': return RoleTag{Role::X, 0};
        case 's': return RoleTag{Role::S, 0};
        case 'r': return RoleTag{Role::R, 0};
        case 'c': return RoleTag{Role::C, 0};
        default: return std::nullopt;
        }
    }
    std::size_t pos = 1;
    std::uint32_t index = 0;
    while (pos < label.size() && std::isdigit(static_cast<unsigned char>(label[pos]))) {
        index = index * 10 + static_cast<std::uint32_t>(label[pos] - '0');
        pos++;
    }
    if (pos == 1 || index == 0) return std::nullopt;
    const std::string rest = label.substr(pos);
    Role role;
    switch (label[0]) {
    case 't': role = Role::T; break;
    case 'a': role = Role::A; break;
    case 'd':
        if (rest.empty()) role = Role::D;
        else if (rest == "^1") role = Role::D1;
        else if (rest == "^2") role = Role::D2;
        else if (rest == "^3") role = Role::D3;
        else return std::nullopt;
        return RoleTag{role, index};
    case 'e': role = Role::E; break;
    case 'y': role = Role::Y; break;
    case 'g': role = Role::G; break;
    case 'k': role = Role::K; break;
    case 'f': role = Role::F; break;
    case 'h': role = Role::H; break;
    default: return std::nullopt;
    }
    if (!rest.empty()) return std::nullopt;
    return RoleTag{role, index};
}

RoleMap::RoleMap(Family family, std::uint32_t n, std::vector<RoleTag> tags)
    : family_(family), n_(n), lane_(family == Family::Locally ? 2 * n : 6 * n - 2), tags_(std::move(tags)),
      by_role_(kRoleCount)
{
    for (NodeId v = 0; v < tags_.size(); v++) {
        auto& slot = by_role_[static_cast<std::size_t>(tags_[v].role)];
        const std::uint32_t i = tags_[v].index;
        if (slot.size() <= i) slot.resize(i + 1, kNoNode);
        if (slot[i] != kNoNode) throw GameError("duplicate role " + role_label(tags_[v]));
        slot[i] = v;
    }
}

NodeId
RoleMap::node(Role role, std::uint32_t index) const
{
    if (!indexed(role)) index = 0;
    const auto& slot = by_role_.at(static_cast<std::size_t>(role));
    if (index >= slot.size() || slot[index] == kNoNode)
        throw GameError("no node with role " + role_label(RoleTag{role, index}));
    return slot[index];
}

bool
RoleMap::has(Role role, std::uint32_t index) const
{
    if (!indexed(role)) index = 0;
    const auto& slot = by_role_.at(static_cast<std::size_t>(role));
    return index < slot.size() && slot[index] != kNoNode;
}

namespace {

std::vector<RoleTag>
inventory(Family family, std::uint32_t n)
{
    const std::uint32_t m = family == Family::Locally ? 2 * n : 6 * n - 2;
    std::vector<RoleTag> tags{{Role::X, 0}, {Role::S, 0}, {Role::R, 0}, {Role::C, 0}};
    for (std::uint32_t i = 1; i <= m; i++) tags.push_back({Role::T, i});
    for (std::uint32_t i = 1; i <= m; i++) tags.push_back({Role::A, i});
    const std::vector<Role> gate = family == Family::Locally
        ? std::vector<Role>{Role::D, Role::E, Role::G, Role::K, Role::F, Role::H}
        : std::vector<Role>{Role::D1, Role::D2, Role::D3, Role::E, Role::Y, Role::G, Role::K, Role::F, Role::H};
    for (std::uint32_t i = 1; i <= n; i++)
        for (Role r : gate) tags.push_back({r, i});
    return tags;
}

}  // namespace

RoleMap
RoleMap::from_labels(const ParityGame& g)
{
    std::vector<RoleTag> tags;
    std::uint32_t n = 0;
    bool stubborn = false;
    for (NodeId v = 0; v < g.size(); v++) {
        auto tag = parse_role_label(g.label(v));
        if (!tag) throw GameError("node " + std::to_string(v) + " has no family role label");
        if (tag->role == Role::E) n = std::max(n, tag->index);
        if (tag->role == Role::D1) stubborn = true;
        tags.push_back(*tag);
    }
    const Family family = stubborn ? Family::Globally : Family::Locally;
    if (n == 0) throw GameError("labels do not describe a family game");
    auto expected = inventory(family, n);
    auto key = [](const RoleTag& t) { return std::pair{static_cast<int>(t.role), t.index}; };
    auto sorted = tags;
    std::sort(sorted.begin(), sorted.end(), [&](auto& a, auto& b) { return key(a) < key(b); });
    std::sort(expected.begin(), expected.end(), [&](auto& a, auto& b) { return key(a) < key(b); });
    if (sorted != expected) throw GameError("labels do not match the node inventory of a family game");
    return RoleMap(family, n, std::move(tags));
}

namespace {

struct Builder {
    RoleMap roles;
    std::vector<Node> nodes;
    std::vector<NodeId> init;

    Builder(Family family, std::uint32_t n) : roles(family, n, inventory(family, n))
    {
        nodes.resize(roles.size());
        init.assign(roles.size(), kNoNode);
        for (NodeId v = 0; v < roles.size(); v++) nodes[v].label = role_label(roles.tag(v));
    }

    NodeId id(Role r, std::uint32_t i = 0) const { return roles.node(r, i); }

    void set(Role r, std::uint32_t i, Player owner, Priority p, std::vector<NodeId> succ, NodeId start = kNoNode)
    {
        Node& node = nodes[id(r, i)];
        node.owner = owner;
        node.priority = p;
        std::sort(succ.begin(), succ.end());
        node.successors = std::move(succ);
        if (owner == Player::Even) init[id(r, i)] = start;
    }

    FamilyGame finish()
    {
        ParityGame g(std::move(nodes));
        Strategy iota(Player::Even, std::move(init));
        iota.validate(g);
        return FamilyGame{std::move(g), std::move(iota), std::move(roles)};
    }
};

constexpr Player P0 = Player::Even;
constexpr Player P1 = Player::Odd;

void
build_lane(Builder& b, std::uint32_t m, Priority lane_base, bool modified)
{
    // t_1 = lane_base, t_i = lane_base + 2i - 2, a_i = lane_base + 2i - 1
    const NodeId s = b.id(Role::S), r = b.id(Role::R), c = b.id(Role::C);
    for (std::uint32_t i = 1; i <= m; i++) {
        const NodeId prev = i == 1 ? c : b.id(Role::T, i - 1);
        NodeId start = r;
        if (i == 1) start = c;
        else if (modified && i <= 3) start = prev;
        b.set(Role::T, i, P0, lane_base + 2 * i - 2, {s, r, prev}, start);
        b.set(Role::A, i, P1, lane_base + 2 * i - 1, {b.id(Role::T, i)});
    }
}

void
build_roots(Builder& b, std::uint32_t n, Priority s_prio, Priority r_prio)
{
    const NodeId x = b.id(Role::X);
    std::vector<NodeId> s_succ{x}, r_succ{x};
    for (std::uint32_t j = 1; j <= n; j++) {
        s_succ.push_back(b.id(Role::F, j));
        r_succ.push_back(b.id(Role::G, j));
    }
    b.set(Role::S, 0, P0, s_prio, s_succ, x);
    b.set(Role::R, 0, P0, r_prio, r_succ, x);
    b.set(Role::X, 0, P1, 1, {x});
}

void
build_exits(Builder& b, std::uint32_t n, Priority base)
{
    // k_i = base + 4i, f_i = base + 4i + 2, h_i = base + 4i + 3
    const NodeId x = b.id(Role::X);
    for (std::uint32_t i = 1; i <= n; i++) {
        std::vector<NodeId> k_succ{x};
        for (std::uint32_t j = i + 1; j <= n; j++) k_succ.push_back(b.id(Role::G, j));
        b.set(Role::K, i, P0, base + 4 * i, k_succ, x);
        b.set(Role::F, i, P1, base + 4 * i + 2, {b.id(Role::E, i)});
        b.set(Role::H, i, P1, base + 4 * i + 3, {b.id(Role::K, i)});
    }
}

}  // namespace

FamilyGame
gen_locally(std::uint32_t n, bool drop_top_edge)
{
    if (n == 0) throw GameError("family index must be at least 1");
    Builder b(Family::Locally, n);
    const std::uint32_t m = 2 * n;
    const NodeId s = b.id(Role::S), r = b.id(Role::R);

    build_lane(b, m, 4 * n + 3, false);
    b.set(Role::C, 0, P0, 8 * n + 4, {s, r}, r);

    for (std::uint32_t i = 1; i <= n; i++) {
        const NodeId e = b.id(Role::E, i);
        std::vector<NodeId> d_succ{s, e, r};
        for (std::uint32_t j = 1; j <= 2 * i; j++) d_succ.push_back(b.id(Role::A, j));
        b.set(Role::D, i, P0, 4 * i - 1, d_succ, r);

        std::vector<NodeId> e_succ{b.id(Role::D, i)};
        if (!(drop_top_edge && i == n)) e_succ.push_back(b.id(Role::H, i));
        b.set(Role::E, i, P1, 4 * i, e_succ);
        b.set(Role::G, i, P0, 4 * i + 2, {b.id(Role::F, i), b.id(Role::K, i)}, b.id(Role::K, i));
    }
    build_exits(b, n, 8 * n + 5);
    build_roots(b, n, 8 * n + 6, 8 * n + 8);
    return b.finish();
}

FamilyGame
gen_globally(std::uint32_t n)
{
    if (n == 0) throw GameError("family index must be at least 1");
    Builder b(Family::Globally, n);
    const std::uint32_t m = 6 * n - 2;
    const NodeId s = b.id(Role::S), r = b.id(Role::R), c = b.id(Role::C);

    build_lane(b, m, 8 * n + 3, true);
    b.set(Role::C, 0, P1, 20 * n, {r});

    for (std::uint32_t i = 1; i <= n; i++) {
        const NodeId d1 = b.id(Role::D1, i), d2 = b.id(Role::D2, i), d3 = b.id(Role::D3, i);
        const NodeId e = b.id(Role::E, i), y = b.id(Role::Y, i), k = b.id(Role::K, i);

        std::vector<NodeId> s1{s, c, d2}, s2{d3}, s3{e};
        for (std::uint32_t j = 0; j + 2 <= 2 * i; j++) s1.push_back(b.id(Role::A, 3 * j + 3));
        for (std::uint32_t j = 0; j + 2 <= 2 * i; j++) s2.push_back(b.id(Role::A, 3 * j + 2));
        for (std::uint32_t j = 0; j + 1 <= 2 * i; j++) s3.push_back(b.id(Role::A, 3 * j + 1));
        b.set(Role::D1, i, P0, 8 * i - 5, s1, d2);
        b.set(Role::D2, i, P0, 8 * i - 3, s2, b.id(Role::A, 2));
        b.set(Role::D3, i, P0, 8 * i - 1, s3, b.id(Role::A, 1));
        b.set(Role::E, i, P1, 8 * i, {d1, b.id(Role::H, i)});
        b.set(Role::Y, i, P0, 8 * i + 1, {b.id(Role::F, i), k}, k);
        b.set(Role::G, i, P0, 8 * i + 2, {y, k}, k);
    }
    build_exits(b, n, 20 * n + 3);
    build_roots(b, n, 20 * n + 2, 20 * n + 4);
    return b.finish();
}

RandomGame
gen_random(std::uint64_t seed, std::uint32_t node_count, std::uint32_t max_outdegree)
{
    if (node_count == 0) throw GameError("random game needs at least one node");
    if (max_outdegree == 0) throw GameError("random game needs a positive outdegree bound");
    std::mt19937_64 rng(seed);
    auto below = [&rng](std::uint64_t k) { return static_cast<std::uint32_t>(rng() % k); };

    std::vector<Priority> prio(node_count);
    for (std::uint32_t i = 0; i < node_count; i++) prio[i] = i + 1;
    for (std::uint32_t i = node_count; i > 1; i--) std::swap(prio[i - 1], prio[below(i)]);

    std::vector<Node> nodes(node_count);
    std::vector<NodeId> init(node_count, kNoNode);
    for (NodeId v = 0; v < node_count; v++) {
        Node& node = nodes[v];
        node.owner = below(2) == 0 ? Player::Even : Player::Odd;
        node.priority = prio[v];
        node.label = "v" + std::to_string(v);
        const std::uint32_t deg = 1 + below(std::min(max_outdegree, node_count));
        std::vector<NodeId> pool(node_count);
        for (NodeId u = 0; u < node_count; u++) pool[u] = u;
        for (std::uint32_t j = 0; j < deg; j++) {
            std::swap(pool[j], pool[j + below(node_count - j)]);
            node.successors.push_back(pool[j]);
        }
        std::sort(node.successors.begin(), node.successors.end());
        if (node.owner == Player::Even) init[v] = node.successors.front();
    }
    ParityGame g(std::move(nodes));
    return RandomGame{std::move(g), Strategy(Player::Even, std::move(init))};
}

}  // namespace pgsi
