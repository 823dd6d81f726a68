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

#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "pgsi/families.hpp"
#include "pgsi/io.hpp"
#include "pgsi/solver.hpp"

using namespace pgsi;
using namespace pgsi::test;

TEST_CASE("PGSolver text round trips byte for byte")
{
    std::vector<ParityGame> games;
    for (std::uint32_t n = 1; n <= 6; ++n) games.push_back(gen_locally(n).game);
    for (std::uint32_t n = 1; n <= 4; ++n) games.push_back(gen_globally(n).game);
    games.push_back(gen_locally(3, true).game);
    for (std::uint64_t seed = 0; seed < 20; ++seed) games.push_back(gen_random(seed, 1 + seed % 12, 4).game);
    for (const ParityGame& g : games) {
        std::string text = pgsolver_text(g);
        ParityGame back = parse_pgsolver_text(text);
        CHECK(back == g);
        CHECK(pgsolver_text(back) == text);
    }
}

TEST_CASE("G_1 file layout")
{
    std::string text = pgsolver_text(gen_locally(1).game);
    CHECK(text.rfind("parity 13;\n", 0) == 0);
    CHECK(text.find("0 1 1 0 \"x\";\n") != std::string::npos);
    std::size_t lines = std::count(text.begin(), text.end(), '\n');
    CHECK(lines == 15);
}

TEST_CASE("parser tolerates missing header, labels and node order")
{
    ParityGame g = parse_pgsolver_text("1 4 0 0,1;\n0 1 1 0 \"sink\";\n");
    CHECK(g.size() == 2);
    CHECK(g.priority(1) == 4);
    CHECK(g.owner(0) == P1);
    CHECK(g.label(0) == "sink");
    CHECK(g.label(1).empty());
    CHECK(g.successors(1).size() == 2);

    ParityGame spaced = parse_pgsolver_text("parity 1;\nstart 0;\n0 1 1 0;\n1 4 0 0, 1 \"a b\";\n");
    CHECK(spaced.label(1) == "a b");
    CHECK(spaced.successors(1).size() == 2);
}

TEST_CASE("parser reports malformed games")
{
    for (const char* bad : {"",
                            "0 1 1;",
                            "0 1 2 0;",
                            "0 x 1 0;",
                            "0 1 1 0;\n2 2 0 0;",
                            "0 1 1 0;\n0 2 0 0;",
                            "parity 3;\n0 1 1 0;",
                            "0 1 1 1;",
                            "0 1 1 0;\n1 1 0 0;",
                            "0 1 1 0 \"open;",
                            "0 1 1 0;\nparity 0;"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_pgsolver_text(bad), FormatError);
    }
    try {
        parse_pgsolver_text("0 1 1 0;\n\n1 2 7 0;");
        FAIL("expected an error");
    } catch (const FormatError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("strategy files")
{
    FamilyGame fg = gen_locally(2);
    Json j = strategy_to_json(fg.initial);
    CHECK(j.size() == fg.game.nodes_of(P0).size());
    CHECK(j["1"] == fg.initial[1]);
    CHECK(strategy_from_json(Json::parse(j.dump()), fg.game) == fg.initial);

    Strategy tau = best_response(fg.game, fg.initial).tau;
    Strategy back = strategy_from_json(strategy_to_json(tau), fg.game);
    CHECK(back.role() == P1);
    CHECK(back == tau);

    CHECK_THROWS_AS(strategy_from_json(Json::array(), fg.game), FormatError);
    CHECK_THROWS_AS(strategy_from_json(Json{{"999", 0}}, fg.game), FormatError);
    Json missing = j;
    missing.erase("1");
    CHECK_THROWS_AS(strategy_from_json(missing, fg.game), FormatError);
    Json wrong = j;
    wrong["1"] = 5;
    CHECK_THROWS_AS(strategy_from_json(wrong, fg.game), FormatError);
    Json mixed = j;
    mixed["0"] = 0;
    CHECK_THROWS_AS(strategy_from_json(mixed, fg.game), FormatError);
}

TEST_CASE("trace files")
{
    FamilyGame fg = gen_locally(3);
    SolveOptions opts;
    opts.full_trace = true;
    SolveReport r = solve(fg.game, fg.initial, LocalPolicy{}, opts);
    Json j = trace_to_json(r.trace, fg.game, &fg.roles);
    REQUIRE(j.size() == r.trace.size());
    CHECK(j[0]["iteration"] == 0);
    CHECK(j[0]["phase"] == 1);
    CHECK(j[0]["b_bits"] == "000");
    CHECK(j[0]["valuation"].size() == fg.game.size());
    CHECK(j[0]["valuation"][0] == Json::array({0, Json::array(), 0}));
    CHECK(j.back()["improving_switches"].empty());
    CHECK(j[0]["improving_switches"].size() == r.trace[0].improving.size());

    std::vector<TraceStep> back = trace_from_json(Json::parse(j.dump()), fg.game);
    REQUIRE(back.size() == r.trace.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].iteration == r.trace[i].iteration);
        CHECK(back[i].sigma == r.trace[i].sigma);
        CHECK(back[i].improving == r.trace[i].improving);
    }

    Json plain = trace_to_json(r.trace, fg.game);
    CHECK_FALSE(plain[0].contains("phase"));
    FamilyGame h = gen_globally(1);
    Json hj = trace_to_json(solve(h.game, h.initial, GlobalPolicy{}).trace, h.game, &h.roles);
    CHECK_FALSE(hj[0].contains("phase"));
    CHECK(hj[0].contains("b_bits"));

    CHECK_THROWS_AS(trace_from_json(Json::object(), fg.game), FormatError);
    CHECK_THROWS_AS(trace_from_json(Json::array({Json{{"iteration", 0}}}), fg.game), FormatError);
}

TEST_CASE("payoff game files round trip")
{
    FamilyGame fg = gen_locally(1);
    MeanPayoffGame m = to_mpg(fg.game);
    DiscountedPayoffGame d = to_dpg(m);
    InducedSsg s = to_ssg(d);

    std::ostringstream mo, dout, so;
    write_mpg(mo, m);
    write_dpg(dout, d);
    write_ssg(so, s.game);

    std::istringstream mi(mo.str()), di(dout.str()), si(so.str());
    MeanPayoffGame m2 = parse_mpg(mi);
    DiscountedPayoffGame d2 = parse_dpg(di);
    SimpleStochasticGame s2 = parse_ssg(si);
    CHECK(m2.reward == m.reward);
    CHECK(d2.beta == d.beta);
    CHECK(s2.probabilities == s.game.probabilities);
    CHECK(s2.sink0 == s.game.sink0);

    std::ostringstream mo2, do2, so2;
    write_mpg(mo2, m2);
    write_dpg(do2, d2);
    write_ssg(so2, s2);
    CHECK(mo2.str() == mo.str());
    CHECK(do2.str() == dout.str());
    CHECK(so2.str() == so.str());

    std::string header = dout.str().substr(0, dout.str().find('\n'));
    CHECK(header == "dpg 13 " + rational_text(d.beta) + ";");
    CHECK(so.str().find(" avg ") != std::string::npos);
}

TEST_CASE("payoff parsers reject malformed input")
{
    for (const char* bad : {"0 0 1 0;", "mpg 0;\n0 2 1 0;", "mpg 0;\n0 0 x 0;", "mpg 1;\n0 0 1 0;"}) {
        std::istringstream in(bad);
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_mpg(in), FormatError);
    }
    for (const char* bad : {"dpg 0;\n0 0 1 0;", "dpg 0 3/2;\n0 0 1 0;", "dpg 0 1/0;\n0 0 1 0;"}) {
        std::istringstream in(bad);
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_dpg(in), FormatError);
    }
    for (const char* bad : {"ssg 2;\n0 avg 1:1/2,2:1/4;\n1 sink0;\n2 sink1;", "ssg 1;\n0 foo;\n1 sink0;",
                            "ssg 2;\n0 max 1:1/2;\n1 sink0;\n2 sink1;", "ssg 1;\n0 sink0 1;\n1 sink1;"}) {
        std::istringstream in(bad);
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_ssg(in), FormatError);
    }
}
