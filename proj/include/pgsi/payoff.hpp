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
#include <string>
#include <vector>

#include <gmpxx.h>

#include "pgsi/game.hpp"
#include "pgsi/solver.hpp"

namespace pgsi {

using Integer = mpz_class;
using Rational = mpq_class;
using ValueAssignment = std::vector<Rational>;

/** Arena with integer node rewards; player 0 maximizes, player 1 minimizes. */
struct MeanPayoffGame {
    std::vector<Player> owners;
    std::vector<std::vector<NodeId>> successors;
    std::vector<Integer> reward;

    std::size_t size() const { return owners.size(); }
    /// Throws GameError on a missing successor, unknown id, or size mismatch.
    void validate() const;
};

struct DiscountedPayoffGame {
    MeanPayoffGame base;
    Rational beta;

    std::size_t size() const { return base.size(); }
    void validate() const;
};

enum class SsgKind : std::uint8_t { Max, Min, Avg, Sink0, Sink1 };

/**
 * Simple stochastic game. Average nodes carry one probability per successor;
 * the two sinks have no successors.
 */
struct SimpleStochasticGame {
    std::vector<SsgKind> kinds;
    std::vector<std::vector<NodeId>> successors;
    std::vector<std::vector<Rational>> probabilities;  // parallel to successors, used at Avg nodes
    NodeId sink0 = kNoNode;
    NodeId sink1 = kNoNode;

    std::size_t size() const { return kinds.size(); }
    void validate() const;
};

/// The stochastic game built from a discounted game together with the constants of the construction.
struct InducedSsg {
    SimpleStochasticGame game;
    Rational beta;
    Integer l;  // least reward
    Integer u;  // greatest reward
    Integer d;  // max(1, u - l)
    std::size_t original_nodes = 0;
    /// avg_node[v][j] is the average node standing for the j-th edge of v.
    std::vector<std::vector<NodeId>> avg_node;
};

/// Rewards (-|V|)^Ω(v).
MeanPayoffGame to_mpg(const ParityGame& g);

/// Attaches β = 1 - 1 / (4 |V|^3 max |r(v)|).
DiscountedPayoffGame to_dpg(const MeanPayoffGame& m);

/// Exact discounted value of every node under a strategy pair, by the lasso closed form.
ValueAssignment dpg_evaluate(const DiscountedPayoffGame& d, const Strategy& sigma, const Strategy& tau);

struct PayoffResponse {
    Strategy tau;
    ValueAssignment values;
};

/**
 * Minimizing counterstrategy against sigma: player 1 policy iteration from the
 * first successors, switching to the least valued successor when strictly
 * better (smallest id among tied minima).
 */
PayoffResponse dpg_best_response(const DiscountedPayoffGame& d, const Strategy& sigma);

struct PayoffStep {
    Strategy sigma;
    std::vector<Switch> improving;
};

struct PayoffSolveReport {
    Strategy sigma;
    Strategy tau;
    ValueAssignment values;
    std::uint64_t iterations = 0;
    std::vector<PayoffStep> trace;
};

/// Locally optimizing strategy iteration on a discounted game; ties keep the current choice.
PayoffSolveReport puri_solve(const DiscountedPayoffGame& d, const Strategy& initial,
                             std::uint64_t iteration_cap = std::uint64_t{1} << 24);

/// Mean of the cycle reached from each node under the strategy pair.
ValueAssignment mpg_values_from_optimal(const MeanPayoffGame& m, const Strategy& sigma, const Strategy& rho);

/// Zwick-Paterson construction: one average node per edge plus the two sinks.
InducedSsg to_ssg(const DiscountedPayoffGame& d);

/// Player 0 strategy of the base game as a Max strategy (and likewise for player 1 / Min).
Strategy lift_strategy(const InducedSsg& s, const Strategy& base);

/// Base game strategy read back from a lifted one.
Strategy lower_strategy(const InducedSsg& s, const Strategy& lifted, Player role);

/**
 * Probability of absorption in sink 1 for a strategy pair (Max strategy
 * role Even, Min strategy role Odd), by exact Gaussian elimination.
 */
ValueAssignment ssg_evaluate(const SimpleStochasticGame& s, const Strategy& max_strategy, const Strategy& min_strategy);

PayoffResponse ssg_best_response(const SimpleStochasticGame& s, const Strategy& max_strategy);

PayoffSolveReport ssg_solve(const SimpleStochasticGame& s, const Strategy& initial,
                            std::uint64_t iteration_cap = std::uint64_t{1} << 24);

/// First successor at every Max (role Even) or Min (role Odd) node.
Strategy ssg_first_successor(const SimpleStochasticGame& s, Player role);

struct CorrespondenceReport {
    std::uint64_t steps_checked = 0;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

/**
 * For every strategy of a parity trace on a 1-sink game: the parity
 * counterstrategy equals the discounted one, the node order by valuation
 * equals the strict order by discounted value, and every play ends in the sink.
 */
CorrespondenceReport check_switch_correspondence(const ParityGame& g, const DiscountedPayoffGame& d,
                                                 const std::vector<TraceStep>& trace);

/// Canonical `num/den` text (denominator always written).
std::string rational_text(const Rational& q);
Rational parse_rational(const std::string& text);

}  // namespace pgsi
