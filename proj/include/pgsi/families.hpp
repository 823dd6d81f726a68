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
#include <optional>
#include <string>
#include <vector>

#include "pgsi/game.hpp"

namespace pgsi {

enum class Family : std::uint8_t { Locally, Globally };

/** Gadget node names of the lower bound families. D is the G_n cycle node, D1..D3 the H_n stubborn cycle. */
enum class Role : std::uint8_t { X, S, R, C, T, A, D, D1, D2, D3, E, Y, G, K, F, H };

struct RoleTag {
    Role role = Role::X;
    std::uint32_t index = 0;  // 1-based for indexed roles, 0 otherwise

    friend bool operator==(const RoleTag&, const RoleTag&) = default;
};

std::string role_label(RoleTag tag);
std::optional<RoleTag> parse_role_label(const std::string& label);

class RoleMap {
public:
    RoleMap() = default;
    RoleMap(Family family, std::uint32_t n, std::vector<RoleTag> tags);

    /// Recovers the map from node labels; throws GameError unless they form a complete family inventory.
    static RoleMap from_labels(const ParityGame& g);

    Family family() const { return family_; }
    std::uint32_t n() const { return n_; }
    std::uint32_t lane_length() const { return lane_; }
    std::size_t size() const { return tags_.size(); }

    RoleTag tag(NodeId v) const { return tags_.at(v); }
    /// Node with the given role; index is ignored for x, s, r, c.
    NodeId node(Role role, std::uint32_t index = 0) const;
    bool has(Role role, std::uint32_t index = 0) const;

private:
    Family family_ = Family::Locally;
    std::uint32_t n_ = 0;
    std::uint32_t lane_ = 0;
    std::vector<RoleTag> tags_;
    std::vector<std::vector<NodeId>> by_role_;
};

struct FamilyGame {
    ParityGame game;
    Strategy initial;
    RoleMap roles;
};

/// Lower bound game for the locally optimizing policy, optionally without the edge e_n -> h_n.
FamilyGame gen_locally(std::uint32_t n, bool drop_top_edge = false);

/// Lower bound game for the globally optimizing policy.
FamilyGame gen_globally(std::uint32_t n);

struct RandomGame {
    ParityGame game;
    Strategy initial;
};

/**
 * Seeded random game: random owners, priorities a permutation of 1..node_count,
 * 1..max_outdegree distinct successors per node. The initial strategy picks the
 * smallest successor id. Output depends only on the arguments.
 */
RandomGame gen_random(std::uint64_t seed, std::uint32_t node_count, std::uint32_t max_outdegree);

}  // namespace pgsi
