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

#include "pgsi/io.hpp"

#include <cctype>
#include <charconv>
#include <iterator>
#include <map>
#include <sstream>

#include "pgsi/counterlab.hpp"

namespace pgsi {

namespace {

struct Statement {
    std::size_t line;
    std::vector<std::string> tokens;
    std::optional<std::string> label;
};

[[noreturn]] void
fail(std::size_t line, const std::string& what)
{
    throw FormatError("line " + std::to_string(line) + ": " + what);
}

std::vector<Statement>
split_statements(std::istream& in)
{
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::vector<Statement> out;
    Statement cur{1, {}, std::nullopt};
    std::string token;
    std::size_t line = 1;
    bool started = false;
    auto flush_token = [&] {
        if (!token.empty()) cur.tokens.push_back(std::move(token));
        token.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        char ch = text[i];
        if (ch == '\n') ++line;
        if (ch == '"') {
            std::size_t end = text.find('"', i + 1);
            if (end == std::string::npos) fail(line, "unterminated label");
            if (cur.label) fail(line, "more than one label");
            flush_token();
            cur.label = text.substr(i + 1, end - i - 1);
            i = end;
            continue;
        }
        if (ch == ';') {
            flush_token();
            if (!cur.tokens.empty() || cur.label) out.push_back(std::move(cur));
            cur = Statement{line, {}, std::nullopt};
            started = false;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            flush_token();
            continue;
        }
        if (!started) {
            cur.line = line;
            started = true;
        }
        token.push_back(ch);
    }
    flush_token();
    if (!cur.tokens.empty() || cur.label) out.push_back(std::move(cur));
    return out;
}

template <typename T>
T
parse_number(const std::string& s, std::size_t line, const char* what)
{
    T value{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) fail(line, std::string("bad ") + what + " '" + s + "'");
    return value;
}

std::vector<std::string>
split_commas(const std::vector<std::string>& tokens, std::size_t first, std::size_t last)
{
    std::string joined;
    for (std::size_t i = first; i < last; ++i) joined += tokens[i];
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos <= joined.size()) {
        std::size_t comma = joined.find(',', pos);
        if (comma == std::string::npos) comma = joined.size();
        parts.push_back(joined.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return parts;
}

Player
parse_owner(const std::string& s, std::size_t line)
{
    if (s == "0") return Player::Even;
    if (s == "1") return Player::Odd;
    fail(line, "owner must be 0 or 1, got '" + s + "'");
}

std::string
join_ids(std::span<const NodeId> ids)
{
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(ids[i]);
    }
    return out;
}

/// Places parsed entries at their ids; every id 0..max must occur exactly once.
template <typename T>
std::vector<T>
dense(std::vector<std::pair<NodeId, T>> entries, std::optional<NodeId> declared_max)
{
    std::vector<std::optional<T>> slots(entries.size());
    for (auto& [id, value] : entries) {
        if (id >= slots.size()) throw FormatError("node ids are not dense: id " + std::to_string(id));
        if (slots[id]) throw FormatError("duplicate node id " + std::to_string(id));
        slots[id] = std::move(value);
    }
    if (declared_max && *declared_max + 1 != slots.size())
        throw FormatError("header declares max id " + std::to_string(*declared_max) + " but " +
                          std::to_string(slots.size()) + " nodes are listed");
    std::vector<T> out;
    out.reserve(slots.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

Json
valuation_json(const ParityGame& g, const NodeValuation& v)
{
    return Json::array({v.cycle, v.path.nodes(g), v.length});
}

struct PayoffNode {
    Player owner;
    Integer reward;
    std::vector<NodeId> successors;
};

std::pair<std::vector<PayoffNode>, std::vector<std::string>>
parse_payoff_nodes(std::istream& in, const std::string& keyword)
{
    auto statements = split_statements(in);
    if (statements.empty() || statements[0].tokens.empty() || statements[0].tokens[0] != keyword)
        throw FormatError("missing '" + keyword + "' header");
    std::vector<std::string> header = statements[0].tokens;
    std::optional<NodeId> declared = header.size() > 1
        ? std::optional<NodeId>(parse_number<NodeId>(header[1], statements[0].line, "max id"))
        : std::nullopt;
    std::vector<std::pair<NodeId, PayoffNode>> entries;
    for (std::size_t i = 1; i < statements.size(); ++i) {
        const auto& st = statements[i];
        if (st.tokens.size() < 4) fail(st.line, "expected '<id> <owner> <reward> <succ>,...'");
        PayoffNode node{parse_owner(st.tokens[1], st.line), Integer(), {}};
        if (node.reward.set_str(st.tokens[2], 10) != 0) fail(st.line, "bad reward '" + st.tokens[2] + "'");
        for (const auto& s : split_commas(st.tokens, 3, st.tokens.size()))
            node.successors.push_back(parse_number<NodeId>(s, st.line, "successor"));
        entries.emplace_back(parse_number<NodeId>(st.tokens[0], st.line, "node id"), std::move(node));
    }
    return {dense(std::move(entries), declared), header};
}

void
write_payoff_nodes(std::ostream& out, const MeanPayoffGame& m)
{
    for (NodeId v = 0; v < m.size(); ++v)
        out << v << ' ' << static_cast<int>(m.owners[v]) << ' ' << m.reward[v].get_str() << ' '
            << join_ids(m.successors[v]) << ";\n";
}

MeanPayoffGame
to_mean_payoff(std::vector<PayoffNode> nodes)
{
    MeanPayoffGame m;
    for (auto& n : nodes) {
        m.owners.push_back(n.owner);
        m.reward.push_back(std::move(n.reward));
        m.successors.push_back(std::move(n.successors));
    }
    try {
        m.validate();
    } catch (const GameError& e) {
        throw FormatError(e.what());
    }
    return m;
}

}  // namespace

ParityGame
parse_pgsolver(std::istream& in)
{
    auto statements = split_statements(in);
    std::optional<NodeId> declared;
    std::vector<std::pair<NodeId, Node>> entries;
    for (const auto& st : statements) {
        if (st.tokens.empty()) fail(st.line, "label without node");
        if (st.tokens[0] == "parity") {
            if (st.tokens.size() != 2) fail(st.line, "header must be 'parity <max-id>'");
            if (!entries.empty() || declared) fail(st.line, "header must come first");
            declared = parse_number<NodeId>(st.tokens[1], st.line, "max id");
            continue;
        }
        if (st.tokens[0] == "start") continue;
        if (st.tokens.size() < 4) fail(st.line, "expected '<id> <priority> <owner> <succ>,...'");
        Node node;
        node.priority = parse_number<Priority>(st.tokens[1], st.line, "priority");
        node.owner = parse_owner(st.tokens[2], st.line);
        for (const auto& s : split_commas(st.tokens, 3, st.tokens.size()))
            node.successors.push_back(parse_number<NodeId>(s, st.line, "successor"));
        node.label = st.label.value_or("");
        entries.emplace_back(parse_number<NodeId>(st.tokens[0], st.line, "node id"), std::move(node));
    }
    if (entries.empty()) throw FormatError("no nodes");
    try {
        return ParityGame(dense(std::move(entries), declared));
    } catch (const GameError& e) {
        throw FormatError(e.what());
    }
}

ParityGame
parse_pgsolver_text(const std::string& text)
{
    std::istringstream in(text);
    return parse_pgsolver(in);
}

void
write_pgsolver(std::ostream& out, const ParityGame& g)
{
    out << "parity " << g.size() - 1 << ";\n";
    for (NodeId v = 0; v < g.size(); ++v)
        out << v << ' ' << g.priority(v) << ' ' << static_cast<int>(g.owner(v)) << ' ' << join_ids(g.successors(v))
            << " \"" << g.label(v) << "\";\n";
}

std::string
pgsolver_text(const ParityGame& g)
{
    std::ostringstream out;
    write_pgsolver(out, g);
    return out.str();
}

Json
strategy_to_json(const Strategy& s)
{
    Json j = Json::object();
    for (NodeId v = 0; v < s.size(); ++v)
        if (s[v] != kNoNode) j[std::to_string(v)] = s[v];
    return j;
}

Strategy
strategy_from_json(const Json& j, const ParityGame& g)
{
    if (!j.is_object()) throw FormatError("strategy must be a JSON object");
    std::vector<NodeId> choices(g.size(), kNoNode);
    std::optional<Player> role;
    for (const auto& [key, value] : j.items()) {
        NodeId v = parse_number<NodeId>(key, 0, "strategy node id");
        if (v >= g.size()) throw FormatError("strategy names unknown node " + key);
        if (!value.is_number_unsigned()) throw FormatError("strategy choice for node " + key + " is not a node id");
        if (role && *role != g.owner(v)) throw FormatError("strategy mixes nodes of both players");
        role = g.owner(v);
        choices[v] = value.get<NodeId>();
    }
    Strategy s(role.value_or(Player::Even), std::move(choices));
    try {
        s.validate(g);
    } catch (const GameError& e) {
        throw FormatError(std::string("invalid strategy: ") + e.what());
    }
    return s;
}

Json
trace_to_json(const std::vector<TraceStep>& trace, const ParityGame& g, const RoleMap* roles)
{
    Json out = Json::array();
    for (const auto& step : trace) {
        Json j;
        j["iteration"] = step.iteration;
        j["sigma"] = strategy_to_json(step.sigma);
        Json switches = Json::array();
        for (const auto& s : step.improving) switches.push_back(Json::array({s.from, s.to}));
        j["improving_switches"] = switches;
        if (roles) {
            if (roles->family() == Family::Locally)
                j["phase"] = static_cast<int>(classify_phase(g, *roles, step.sigma).phase);
            j["b_bits"] = to_string(bit_state(g, *roles, step.sigma).bits);
        }
        if (step.valuation) {
            Json val = Json::array();
            for (const auto& nv : *step.valuation) val.push_back(valuation_json(g, nv));
            j["valuation"] = val;
        }
        out.push_back(std::move(j));
    }
    return out;
}

std::vector<TraceStep>
trace_from_json(const Json& j, const ParityGame& g)
{
    if (!j.is_array()) throw FormatError("trace must be a JSON array");
    std::vector<TraceStep> out;
    for (const auto& step : j) {
        if (!step.is_object() || !step.contains("iteration") || !step.contains("sigma"))
            throw FormatError("trace step needs 'iteration' and 'sigma'");
        TraceStep t;
        t.iteration = step["iteration"].get<std::uint64_t>();
        t.sigma = strategy_from_json(step["sigma"], g);
        if (step.contains("improving_switches"))
            for (const auto& s : step["improving_switches"]) {
                if (!s.is_array() || s.size() != 2) throw FormatError("improving switch must be [from, to]");
                t.improving.push_back({s[0].get<NodeId>(), s[1].get<NodeId>()});
            }
        out.push_back(std::move(t));
    }
    return out;
}

void
write_mpg(std::ostream& out, const MeanPayoffGame& m)
{
    out << "mpg " << m.size() - 1 << ";\n";
    write_payoff_nodes(out, m);
}

MeanPayoffGame
parse_mpg(std::istream& in)
{
    auto [nodes, header] = parse_payoff_nodes(in, "mpg");
    if (header.size() != 2) throw FormatError("header must be 'mpg <max-id>'");
    return to_mean_payoff(std::move(nodes));
}

void
write_dpg(std::ostream& out, const DiscountedPayoffGame& d)
{
    out << "dpg " << d.size() - 1 << ' ' << rational_text(d.beta) << ";\n";
    write_payoff_nodes(out, d.base);
}

DiscountedPayoffGame
parse_dpg(std::istream& in)
{
    auto [nodes, header] = parse_payoff_nodes(in, "dpg");
    if (header.size() != 3) throw FormatError("header must be 'dpg <max-id> <beta>'");
    DiscountedPayoffGame d{to_mean_payoff(std::move(nodes)), Rational()};
    try {
        d.beta = parse_rational(header[2]);
        d.validate();
    } catch (const std::exception& e) {
        throw FormatError(e.what());
    }
    return d;
}

void
write_ssg(std::ostream& out, const SimpleStochasticGame& s)
{
    out << "ssg " << s.size() - 1 << ";\n";
    for (NodeId v = 0; v < s.size(); ++v) {
        out << v;
        switch (s.kinds[v]) {
        case SsgKind::Max: out << " max " << join_ids(s.successors[v]); break;
        case SsgKind::Min: out << " min " << join_ids(s.successors[v]); break;
        case SsgKind::Sink0: out << " sink0"; break;
        case SsgKind::Sink1: out << " sink1"; break;
        case SsgKind::Avg:
            out << " avg ";
            for (std::size_t i = 0; i < s.successors[v].size(); ++i)
                out << (i ? "," : "") << s.successors[v][i] << ':' << rational_text(s.probabilities[v][i]);
            break;
        }
        out << ";\n";
    }
}

SimpleStochasticGame
parse_ssg(std::istream& in)
{
    struct Entry {
        SsgKind kind;
        std::vector<NodeId> successors;
        std::vector<Rational> probabilities;
    };
    auto statements = split_statements(in);
    if (statements.empty() || statements[0].tokens.size() != 2 || statements[0].tokens[0] != "ssg")
        throw FormatError("missing 'ssg <max-id>' header");
    NodeId declared = parse_number<NodeId>(statements[0].tokens[1], statements[0].line, "max id");
    std::vector<std::pair<NodeId, Entry>> entries;
    for (std::size_t i = 1; i < statements.size(); ++i) {
        const auto& st = statements[i];
        if (st.tokens.size() < 2) fail(st.line, "expected '<id> <kind> ...'");
        static const std::map<std::string, SsgKind> kinds{{"max", SsgKind::Max}, {"min", SsgKind::Min},
                                                          {"avg", SsgKind::Avg}, {"sink0", SsgKind::Sink0},
                                                          {"sink1", SsgKind::Sink1}};
        auto kind = kinds.find(st.tokens[1]);
        if (kind == kinds.end()) fail(st.line, "unknown node kind '" + st.tokens[1] + "'");
        Entry e{kind->second, {}, {}};
        bool sink = e.kind == SsgKind::Sink0 || e.kind == SsgKind::Sink1;
        if (sink != (st.tokens.size() == 2)) fail(st.line, "sinks have no successors, other nodes need some");
        if (!sink)
            for (const auto& part : split_commas(st.tokens, 2, st.tokens.size())) {
                std::size_t colon = part.find(':');
                if ((e.kind == SsgKind::Avg) != (colon != std::string::npos))
                    fail(st.line, "'succ:prob' pairs are required exactly at avg nodes");
                e.successors.push_back(parse_number<NodeId>(part.substr(0, colon), st.line, "successor"));
                if (e.kind == SsgKind::Avg) {
                    try {
                        e.probabilities.push_back(parse_rational(part.substr(colon + 1)));
                    } catch (const std::exception&) {
                        fail(st.line, "bad probability '" + part.substr(colon + 1) + "'");
                    }
                }
            }
        entries.emplace_back(parse_number<NodeId>(st.tokens[0], st.line, "node id"), std::move(e));
    }
    SimpleStochasticGame s;
    NodeId id = 0;
    for (auto& e : dense(std::move(entries), declared)) {
        if (e.kind == SsgKind::Sink0) s.sink0 = id;
        if (e.kind == SsgKind::Sink1) s.sink1 = id;
        s.kinds.push_back(e.kind);
        s.successors.push_back(std::move(e.successors));
        s.probabilities.push_back(std::move(e.probabilities));
        ++id;
    }
    try {
        s.validate();
    } catch (const GameError& e) {
        throw FormatError(e.what());
    }
    return s;
}

}  // namespace pgsi
