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

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pgsi/counterlab.hpp"
#include "pgsi/families.hpp"
#include "pgsi/io.hpp"
#include "pgsi/oracle.hpp"
#include "pgsi/payoff.hpp"
#include "pgsi/policies.hpp"
#include "pgsi/solver.hpp"

using namespace pgsi;

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kFormat = 2, kCheckFailed = 3, kResourceCap = 4 };

/** Bad flag combination detected after parsing. */
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/** Unreadable or unwritable file. */
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string
read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void
write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text)) throw IoError("cannot write " + path);
}

ParityGame
load_game(const std::string& path)
{
    return parse_pgsolver_text(read_file(path));
}

Json
load_json(const std::string& path)
{
    try {
        return Json::parse(read_file(path));
    } catch (const Json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

Strategy
load_initial(const std::optional<std::string>& path, const ParityGame& g)
{
    if (!path) return Strategy::first_successor(g, Player::Even);
    return strategy_from_json(load_json(*path), g);
}

std::optional<RoleMap>
family_roles(const ParityGame& g)
{
    try {
        return RoleMap::from_labels(g);
    } catch (const GameError&) {
        return std::nullopt;
    }
}

Family
parse_family(const std::string& name)
{
    return name == "loc" ? Family::Locally : Family::Globally;
}

FamilyGame
make_family(Family family, std::uint32_t n, bool drop_top_edge)
{
    return family == Family::Locally ? gen_locally(n, drop_top_edge) : gen_globally(n);
}

PolicyKind
make_policy(const std::string& name, const ParityGame& g, const Strategy& initial)
{
    if (name == "local") return LocalPolicy{};
    if (name == "global") return GlobalPolicy{};
    return LinearPolicy{optimal_target(g, initial)};
}

void
print(const Json& j)
{
    std::cout << j.dump(2) << '\n';
}

struct Options {
    std::string family = "loc";
    std::uint32_t n = 1;
    bool drop_top_edge = false;
    std::string out;
    std::string init_out;

    std::string game;
    std::optional<std::string> init;
    std::string policy = "local";
    std::optional<std::string> trace_out;
    bool full_trace = false;
    std::uint64_t iteration_cap = std::uint64_t{1} << 24;

    std::uint32_t n_min = 1;
    std::uint32_t n_max = 1;
    std::optional<std::string> csv;

    std::string trace;
    std::string to;
};

int
cmd_generate(const Options& o)
{
    if (o.drop_top_edge && o.family != "loc") throw UsageError("--drop-top-edge is only valid with --family loc");
    FamilyGame fg = make_family(parse_family(o.family), o.n, o.drop_top_edge);
    write_file(o.out, pgsolver_text(fg.game));
    write_file(o.init_out, strategy_to_json(fg.initial).dump(2) + "\n");
    print(Json{{"family", o.family},
               {"n", o.n},
               {"nodes", fg.game.size()},
               {"edges", fg.game.edge_count()},
               {"max_priority", fg.game.max_priority()}});
    return kOk;
}

int
cmd_validate(const Options& o)
{
    ParityGame g = load_game(o.game);
    Strategy initial = load_initial(o.init, g);
    OneSinkCertificate c = validate_one_sink(g, initial, o.iteration_cap);
    Json report{{"sink", c.sink == kNoNode ? Json(nullptr) : Json(c.sink)},
                {"sink_existence", c.sink_existence},
                {"all_won_by_p1", c.all_won_by_p1},
                {"initial_cycle_components_ok", c.initial_cycle_components_ok},
                {"sink_seeking", c.sink_seeking},
                {"iterations", c.iterations},
                {"valid", c.valid()}};
    print(report);
    return c.valid() ? kOk : kCheckFailed;
}

int
cmd_solve(const Options& o)
{
    ParityGame g = load_game(o.game);
    Strategy initial = load_initial(o.init, g);
    PolicyKind policy = make_policy(o.policy, g, initial);
    SolveOptions opts;
    opts.iteration_cap = o.iteration_cap;
    opts.record_trace = o.trace_out.has_value();
    opts.full_trace = o.full_trace;
    SolveReport r = solve(g, initial, policy, opts);
    if (o.trace_out) {
        std::optional<RoleMap> roles = family_roles(g);
        write_file(*o.trace_out, trace_to_json(r.trace, g, roles ? &*roles : nullptr).dump() + "\n");
    }
    print(Json{{"policy", policy_name(policy)},
               {"tie_rule", "keep the current choice among equal maxima, else the smallest successor id"},
               {"iterations", r.iterations},
               {"p0_nodes", g.nodes_of(Player::Even).size()},
               {"W0", r.w0},
               {"W1", r.w1},
               {"sigma", strategy_to_json(r.sigma)}});
    return kOk;
}

int
cmd_bench(const Options& o)
{
    if (o.n_min > o.n_max) throw UsageError("--n-min exceeds --n-max");
    if (o.drop_top_edge && o.family != "loc") throw UsageError("--drop-top-edge is only valid with --family loc");
    std::ostringstream rows;
    bool header = true;
    if (o.csv && std::filesystem::exists(*o.csv) && std::filesystem::file_size(*o.csv) > 0) header = false;
    if (header) rows << "family,policy,n,nodes,edges,iterations,wall_ms\n";
    for (std::uint32_t n = o.n_min; n <= o.n_max; ++n) {
        FamilyGame fg = make_family(parse_family(o.family), n, o.drop_top_edge);
        SolveOptions opts;
        opts.iteration_cap = o.iteration_cap;
        opts.record_trace = false;
        auto start = std::chrono::steady_clock::now();
        SolveReport r = solve(fg.game, fg.initial, make_policy(o.policy, fg.game, fg.initial), opts);
        std::chrono::duration<double, std::milli> wall = std::chrono::steady_clock::now() - start;
        rows << o.family << ',' << o.policy << ',' << n << ',' << fg.game.size() << ',' << fg.game.edge_count()
             << ',' << r.iterations << ',' << std::fixed << std::setprecision(3) << wall.count() << '\n';
    }
    if (!o.csv) {
        std::cout << rows.str();
        return kOk;
    }
    std::ofstream out(*o.csv, std::ios::app);
    if (!out || !(out << rows.str())) throw IoError("cannot write " + *o.csv);
    return kOk;
}

int
cmd_trace_check(const Options& o)
{
    ParityGame g = load_game(o.game);
    std::vector<TraceStep> trace = trace_from_json(load_json(o.trace), g);
    std::optional<RoleMap> roles = family_roles(g);
    if (!roles) throw FormatError(o.game + ": node labels do not describe a lower bound family game");
    Json violations = Json::array();
    for (std::size_t i = 0; i < trace.size(); ++i) {
        auto val = best_response(g, trace[i].sigma).valuation;
        if (improving_switches(g, trace[i].sigma, val) != trace[i].improving)
            violations.push_back(Json{{"iteration", trace[i].iteration}, {"message", "recorded improving switches differ"}});
        if (trace[i].iteration != i)
            violations.push_back(Json{{"iteration", trace[i].iteration}, {"message", "iterations are not consecutive"}});
    }
    CounterReport c = check_counter_trace(trace, g, *roles);
    for (const auto& v : c.violations) violations.push_back(Json{{"iteration", v.iteration}, {"message", v.message}});
    Json phases = Json::array();
    for (Phase p : c.phases) phases.push_back(static_cast<int>(p));
    bool ok = violations.empty();
    print(Json{{"family", c.family == Family::Locally ? "loc" : "glo"},
               {"counting_bits", c.counting_bits},
               {"iterations", c.iterations},
               {"values", c.values},
               {"increments", c.increments},
               {"phases", phases},
               {"violations", violations},
               {"ok", ok}});
    return ok ? kOk : kCheckFailed;
}

int
cmd_reduce(const Options& o)
{
    ParityGame g = load_game(o.game);
    MeanPayoffGame m = to_mpg(g);
    std::ostringstream text;
    Json report{{"to", o.to}};
    if (o.to == "mpg") {
        write_mpg(text, m);
        report["nodes"] = m.size();
    } else {
        DiscountedPayoffGame d = to_dpg(m);
        report["beta"] = rational_text(d.beta);
        if (o.to == "dpg") {
            write_dpg(text, d);
            report["nodes"] = d.size();
        } else {
            InducedSsg s = to_ssg(d);
            write_ssg(text, s.game);
            report["nodes"] = s.game.size();
            report["l"] = s.l.get_str();
            report["u"] = s.u.get_str();
            report["d"] = s.d.get_str();
        }
    }
    if (o.out.empty())
        std::cout << text.str();
    else
        write_file(o.out, text.str());
    if (!o.out.empty()) print(report);
    return kOk;
}

}  // namespace

int
main(int argc, char** argv)
{
    CLI::App app{"Strategy iteration lower bound games for parity, payoff and stochastic games"};
    app.require_subcommand(1);
    Options o;

    auto* generate = app.add_subcommand("generate", "Write a lower bound game and its initial strategy");
    generate->add_option("--family", o.family)->required()->check(CLI::IsMember({"loc", "glo"}));
    generate->add_option("--n", o.n)->required()->check(CLI::Range(1u, 64u));
    generate->add_flag("--drop-top-edge", o.drop_top_edge, "Remove e_n -> h_n (loc only)");
    generate->add_option("--out", o.out, "Game file (PGSolver format)")->required();
    generate->add_option("--init-out", o.init_out, "Initial strategy file (JSON)")->required();

    auto* validate = app.add_subcommand("validate", "Check the 1-sink property of a game with an initial strategy");
    validate->add_option("--game", o.game)->required();
    validate->add_option("--init", o.init);
    validate->add_option("--iteration-cap", o.iteration_cap);

    auto* solve_cmd = app.add_subcommand("solve", "Run strategy iteration");
    solve_cmd->add_option("--game", o.game)->required();
    solve_cmd->add_option("--init", o.init);
    solve_cmd->add_option("--policy", o.policy)->check(CLI::IsMember({"local", "global", "linear"}));
    solve_cmd->add_option("--trace-out", o.trace_out);
    solve_cmd->add_flag("--full-trace", o.full_trace, "Add valuation triples to the trace");
    solve_cmd->add_option("--iteration-cap", o.iteration_cap);

    auto* bench = app.add_subcommand("bench", "Iteration counts over a range of n as CSV");
    bench->add_option("--family", o.family)->required()->check(CLI::IsMember({"loc", "glo"}));
    bench->add_option("--policy", o.policy)->check(CLI::IsMember({"local", "global", "linear"}));
    bench->add_option("--n-min", o.n_min)->required()->check(CLI::Range(1u, 64u));
    bench->add_option("--n-max", o.n_max)->required()->check(CLI::Range(1u, 64u));
    bench->add_flag("--drop-top-edge", o.drop_top_edge);
    bench->add_option("--csv", o.csv, "Append rows to this file instead of stdout");
    bench->add_option("--iteration-cap", o.iteration_cap);

    auto* trace_check = app.add_subcommand("trace-check", "Check a solve trace of a family game against the counter");
    trace_check->add_option("--game", o.game)->required();
    trace_check->add_option("--trace", o.trace)->required();

    auto* reduce = app.add_subcommand("reduce", "Translate a parity game into a payoff or stochastic game");
    reduce->add_option("--game", o.game)->required();
    reduce->add_option("--to", o.to)->required()->check(CLI::IsMember({"mpg", "dpg", "ssg"}));
    reduce->add_option("--out", o.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*generate) return cmd_generate(o);
        if (*validate) return cmd_validate(o);
        if (*solve_cmd) return cmd_solve(o);
        if (*bench) return cmd_bench(o);
        if (*trace_check) return cmd_trace_check(o);
        if (*reduce) return cmd_reduce(o);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const FormatError& e) {
        std::cerr << "format error: " << e.what() << '\n';
        return kFormat;
    } catch (const GameError& e) {
        std::cerr << "format error: " << e.what() << '\n';
        return kFormat;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kFormat;
    } catch (const IterationCapExceeded& e) {
        std::cerr << "resource cap: " << e.what() << '\n';
        return kResourceCap;
    } catch (const SearchSpaceOverflow& e) {
        std::cerr << "resource cap: " << e.what() << '\n';
        return kResourceCap;
    } catch (const PolicyContractViolation& e) {
        std::cerr << "check failed: " << e.what() << '\n';
        return kCheckFailed;
    }
    return kUsage;
}
