#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mvrcg/errors.hpp"
#include "mvrcg/mixed_graph.hpp"

namespace mvrcg {

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return in;
}

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    return out;
}

}  // namespace detail

inline constexpr const char* kGraphHeader = "# mvr-graph v1";

/// Graph text format:
///
///     # mvr-graph v1
///     nodes: a b c
///     a -> b
///     b <-> c
///     a -- c
///
/// Further '#' lines are comments.
inline MixedGraph read_graph(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& msg) -> ParseError {
        return ParseError("graph line " + std::to_string(lineno) + ": " + msg);
    };

    if (!std::getline(in, line)) throw ParseError("graph: empty input");
    ++lineno;
    if (detail::trim(line) != kGraphHeader) throw fail("expected header '" + std::string(kGraphHeader) + "'");

    std::optional<MixedGraph> g;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = detail::trim(line);
        if (t.empty() || t.front() == '#') continue;
        if (!g) {
            if (t.rfind("nodes:", 0) != 0) throw fail("expected 'nodes:' line");
            try {
                g.emplace(detail::split_ws(t.substr(6)));
            } catch (const GraphError& e) {
                throw fail(e.what());
            }
            continue;
        }
        const auto tok = detail::split_ws(t);
        if (tok.size() != 3) throw fail("expected '<a> <op> <b>'");
        const auto a = g->find(tok[0]);
        const auto b = g->find(tok[2]);
        if (!a) throw fail("unknown vertex '" + tok[0] + "'");
        if (!b) throw fail("unknown vertex '" + tok[2] + "'");
        try {
            if (tok[1] == "->") g->add_directed(*a, *b);
            else if (tok[1] == "<->") g->add_bidirected(*a, *b);
            else if (tok[1] == "--") g->add_undirected(*a, *b);
            else throw fail("unknown edge operator '" + tok[1] + "'");
        } catch (const GraphError& e) {
            throw fail(e.what());
        }
    }
    if (!g) throw ParseError("graph: missing 'nodes:' line");
    return std::move(*g);
}

inline MixedGraph read_graph_string(const std::string& text) {
    std::istringstream in(text);
    return read_graph(in);
}

inline MixedGraph read_graph_file(const std::string& path) {
    auto in = detail::open_input(path);
    return read_graph(in);
}

/// Edges are written in (min index, max index) order; a directed edge whose
/// arrowhead sits on the smaller index is written reversed.
inline void write_graph(std::ostream& out, const MixedGraph& g) {
    out << kGraphHeader << '\n' << "nodes:";
    for (const auto& nm : g.names()) out << ' ' << nm;
    out << '\n';
    for (auto [u, v] : g.edge_pairs()) {
        const Mark mu = g.mark(u, v), mv = g.mark(v, u);
        if (mu == Mark::Tail && mv == Mark::Tail) out << g.name(u) << " -- " << g.name(v) << '\n';
        else if (mu == Mark::Arrow && mv == Mark::Arrow) out << g.name(u) << " <-> " << g.name(v) << '\n';
        else if (mv == Mark::Arrow) out << g.name(u) << " -> " << g.name(v) << '\n';
        else out << g.name(v) << " -> " << g.name(u) << '\n';
    }
}

inline std::string graph_to_string(const MixedGraph& g) {
    std::ostringstream out;
    write_graph(out, g);
    return out.str();
}

inline void write_graph_file(const std::string& path, const MixedGraph& g) {
    auto out = detail::open_output(path);
    write_graph(out, g);
}

}  // namespace mvrcg
