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

#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pgsi/families.hpp"
#include "pgsi/game.hpp"
#include "pgsi/payoff.hpp"
#include "pgsi/solver.hpp"

namespace pgsi {

/** Malformed input text; the message carries the 1-based line number when known. */
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

/**
 * PGSolver text: optional header `parity <max-id>;`, then one statement per
 * node `<id> <priority> <owner> <succ>[,<succ>...] ["<label>"];`. Ids must
 * be dense after parsing.
 */
ParityGame parse_pgsolver(std::istream& in);
ParityGame parse_pgsolver_text(const std::string& text);
void write_pgsolver(std::ostream& out, const ParityGame& g);
std::string pgsolver_text(const ParityGame& g);

/// Object mapping node id strings to successor ids.
Json strategy_to_json(const Strategy& s);
/// The role is the owner of the listed nodes; the strategy is validated against g.
Strategy strategy_from_json(const Json& j, const ParityGame& g);

/**
 * Array of steps {iteration, sigma, improving_switches, phase, b_bits}.
 * phase and b_bits are present when roles is given (phase only for G_n);
 * a recorded valuation adds "valuation" as [cycle, [path...], length] triples.
 */
Json trace_to_json(const std::vector<TraceStep>& trace, const ParityGame& g, const RoleMap* roles = nullptr);
std::vector<TraceStep> trace_from_json(const Json& j, const ParityGame& g);

/// `mpg <max-id>;` then `<id> <owner> <reward> <succ>[,<succ>...];`.
void write_mpg(std::ostream& out, const MeanPayoffGame& m);
MeanPayoffGame parse_mpg(std::istream& in);

/// `dpg <max-id> <beta>;` then the mpg node lines.
void write_dpg(std::ostream& out, const DiscountedPayoffGame& d);
DiscountedPayoffGame parse_dpg(std::istream& in);

/// `ssg <max-id>;` then `<id> max|min <succ>,...;`, `<id> avg <succ>:<prob>,...;` or `<id> sink0|sink1;`.
void write_ssg(std::ostream& out, const SimpleStochasticGame& s);
SimpleStochasticGame parse_ssg(std::istream& in);

}  // namespace pgsi
