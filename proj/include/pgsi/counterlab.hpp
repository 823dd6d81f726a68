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

#include "pgsi/families.hpp"
#include "pgsi/game.hpp"
#include "pgsi/solver.hpp"

namespace pgsi {

using Bits = std::vector<std::uint8_t>;  // Bits[i - 1] is bit i, the least significant bit first

/**
 * Counter state read off a strategy on a family game. For G_n the entries are
 * 0/1 (cycle closed, gate accessed); for H_n bits holds β_i in 0..3 and access
 * holds α_i in 0..2.
 */
struct BitState {
    Bits bits;
    Bits access;

    friend bool operator==(const BitState&, const BitState&) = default;
};

/// Least unset bit, or n + 1.
std::uint32_t least_unset(const Bits& b);
/// Least set bit, or n + 1.
std::uint32_t least_set(const Bits& b);
/// b ⊕ 1; the all-ones vector wraps to zero.
Bits increment(const Bits& b);
std::uint64_t to_integer(const Bits& b);
/// Most significant bit first, as usually written.
std::string to_string(const Bits& b);

BitState bit_state(const ParityGame& g, const RoleMap& roles, const Strategy& sigma);

struct DecelerationState {
    Role root = Role::R;  // Role::S or Role::R
    std::uint32_t index = 0;

    friend bool operator==(const DecelerationState&, const DecelerationState&) = default;
};

/// The unique lane state (root, index) of sigma, or nullopt when sigma is not well-behaved.
std::optional<DecelerationState> deceleration_state(const ParityGame& g, const RoleMap& roles, const Strategy& sigma);

/// σ(s), σ(r) and σ(k_i) as gate indices, n + 1 standing for x.
struct RootTargets {
    std::uint32_t s = 0;
    std::uint32_t r = 0;
    std::vector<std::uint32_t> k;  // k[i - 1] for k_i
};

RootTargets root_targets(const ParityGame& g, const RoleMap& roles, const Strategy& sigma);

enum class Phase : std::uint8_t { Unclassified = 0, One = 1, Two = 2, Three = 3, Four = 4 };

struct PhaseReport {
    Phase phase = Phase::Unclassified;
    Bits counter;  // the global counter state b the phase refers to
    BitState observed;
    std::optional<DecelerationState> deceleration;
    RootTargets targets;
};

/**
 * Matches sigma against the four phase definitions on G_n. Candidate counter
 * states are recovered from b_σ and a_σ; the full clause list of each phase is
 * checked. A reset lane in phase 4 is the state (s, 1).
 */
PhaseReport classify_phase(const ParityGame& g, const RoleMap& roles, const Strategy& sigma);

struct CounterViolation {
    std::uint64_t iteration;
    std::string message;
};

struct CounterReport {
    Family family = Family::Locally;
    std::uint32_t counting_bits = 0;
    /// Distinct counter values in order of appearance (phase-1 strategies for G_n, stable points for H_n).
    std::vector<std::uint64_t> values;
    std::uint64_t increments = 0;
    std::vector<Phase> phases;
    std::uint64_t iterations = 0;
    std::vector<CounterViolation> violations;

    bool ok() const { return violations.empty(); }
};

/**
 * Checks a solve trace on a family game against the binary counter behaviour.
 *
 * G_n: every strategy up to the point where one of the two top bits becomes
 * involved classifies into a phase, consecutive phases follow 1→1, 1→2, 2→3,
 * 3→4, 4→1 with the matching counter states, and the phase-1 counter values on
 * the low n−2 bits count 0, 1, 2, ... with at least 2^(n−2) values.
 *
 * H_n: at stable points (every gate in state (1,0) or (3,2)) the bit vector
 * increases by exactly one between distinct consecutive values and attains at
 * least 2^(n−2) values on the low bits.
 */
CounterReport check_counter_trace(const std::vector<TraceStep>& trace, const ParityGame& g, const RoleMap& roles);

}  // namespace pgsi
