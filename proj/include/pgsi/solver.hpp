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
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pgsi/game.hpp"
#include "pgsi/policies.hpp"
#include "pgsi/valuation.hpp"

namespace pgsi {

class IterationCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/** A policy returned an edge outside the arena, failed to improve, or the valuation did not grow. */
class PolicyContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct TraceStep {
    std::uint64_t iteration = 0;
    Strategy sigma;
    std::uint64_t valuation_digest = 0;
    std::vector<Switch> improving;
    std::vector<Switch> chosen;
    std::optional<GameValuation> valuation;
};

struct SolveOptions {
    std::uint64_t iteration_cap = std::uint64_t{1} << 24;
    bool record_trace = true;
    bool full_trace = false;
    /// Called once per visited strategy with its best-response valuation.
    std::function<void(std::uint64_t iteration, const Strategy&, const GameValuation&)> observer;
};

struct SolveReport {
    Strategy sigma;
    Strategy tau;
    std::vector<NodeId> w0;
    std::vector<NodeId> w1;
    std::uint64_t iterations = 0;
    std::vector<TraceStep> trace;
    GameValuation valuation;
};

/**
 * Strategy iteration from initial until no improving switch remains.
 *
 * Every step is checked against the policy contract (choices lie in the
 * arena, some node strictly improves) and against strict growth of the
 * game valuation; a failure raises PolicyContractViolation.
 */
SolveReport solve(const ParityGame& g, const Strategy& initial, const PolicyKind& policy,
                  const SolveOptions& options = {});

struct OneSinkCertificate {
    NodeId sink = kNoNode;
    bool sink_existence = false;
    bool all_won_by_p1 = false;
    bool initial_cycle_components_ok = false;
    /// Every valuation met during a local-policy run has the sink as cycle component.
    bool sink_seeking = false;
    std::uint64_t iterations = 0;

    bool valid() const { return sink_existence && all_won_by_p1 && initial_cycle_components_ok && sink_seeking; }
};

/// Candidate sink: the self-loop with priority 1, uniquely minimal and reachable from everywhere.
std::optional<NodeId> find_sink(const ParityGame& g);

OneSinkCertificate validate_one_sink(const ParityGame& g, const Strategy& initial,
                                     std::uint64_t iteration_cap = std::uint64_t{1} << 24);

}  // namespace pgsi
