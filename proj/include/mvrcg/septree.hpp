#pragma once

#include <algorithm>
#include <deque>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "mvrcg/chordal.hpp"
#include "mvrcg/ci_tests.hpp"
#include "mvrcg/errors.hpp"
#include "mvrcg/graph_core.hpp"
#include "mvrcg/graph_io.hpp"
#include "mvrcg/mixed_graph.hpp"
#include "mvrcg/vertex_set.hpp"

namespace mvrcg {

/// Tree of vertex sets whose edges carry separators S = C_i n C_j. It is an
/// m-separation tree for a chain graph G when the nodes cover V and each
/// separator m-separates the two sides it splits (see validate_tree).
struct SeparationTree {
    std::vector<VertexSet> nodes;
    std::vector<CliqueTreeEdge> edges;

    /// Largest node size.
    std::size_t max_node_size() const {
        std::size_t m = 0;
        for (const auto& c : nodes) m = std::max(m, c.size());
        return m;
    }

    /// Vertices covered by the nodes on the `side` of edge `e` that contains
    /// endpoint `side` (a or b).
    VertexSet side_vertices(std::size_t e, std::size_t start) const {
        std::vector<char> seen(nodes.size(), 0);
        std::deque<std::size_t> queue{start};
        seen[start] = 1;
        VertexSet out;
        while (!queue.empty()) {
            const std::size_t i = queue.front();
            queue.pop_front();
            out.insert(nodes[i].begin(), nodes[i].end());
            for (std::size_t k = 0; k < edges.size(); ++k) {
                if (k == e) continue;
                const auto& ed = edges[k];
                std::size_t other = nodes.size();
                if (ed.a == i) other = ed.b;
                else if (ed.b == i) other = ed.a;
                if (other < nodes.size() && !seen[other]) {
                    seen[other] = 1;
                    queue.push_back(other);
                }
            }
        }
        return out;
    }
};

/// Orders nodes by (smallest vertex, size, contents) and remaps the edges.
inline SeparationTree to_separation_tree(const CliqueTree& ct) {
    std::vector<std::size_t> perm(ct.cliques.size());
    std::iota(perm.begin(), perm.end(), 0);
    auto key = [&](std::size_t i) {
        const auto& c = ct.cliques[i];
        return std::make_tuple(c.empty() ? Vertex(-1) : *c.begin(), c.size(), c);
    };
    std::sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) { return key(x) < key(y); });
    std::vector<std::size_t> rank(perm.size());
    SeparationTree t;
    for (std::size_t r = 0; r < perm.size(); ++r) {
        rank[perm[r]] = r;
        t.nodes.push_back(ct.cliques[perm[r]]);
    }
    for (const auto& e : ct.edges) {
        std::size_t a = rank[e.a], b = rank[e.b];
        if (a > b) std::swap(a, b);
        t.edges.push_back({a, b, e.separator});
    }
    std::sort(t.edges.begin(), t.edges.end(),
              [](const CliqueTreeEdge& x, const CliqueTreeEdge& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
    return t;
}

/// Junction tree of the triangulated undirected independence graph.
inline SeparationTree tree_from_uig(const UndirectedGraph& uig) {
    return to_separation_tree(junction_tree(triangulate(uig)));
}

inline SeparationTree tree_from_data(const CITester& tester, double alpha) {
    return tree_from_uig(uig_from_data(tester, alpha));
}

// ---------------------------------------------------------------------------
// Hypergraphs

struct Hypergraph {
    std::vector<std::string> names;  // the vertex universe
    std::vector<VertexSet> hyperedges;

    /// Drops empty and duplicate hyperedges and every hyperedge contained in
    /// another. Returns the number removed.
    std::size_t reduce() {
        std::vector<VertexSet> sorted = hyperedges;
        std::sort(sorted.begin(), sorted.end(),
                  [](const VertexSet& x, const VertexSet& y) { return x.size() > y.size() || (x.size() == y.size() && x < y); });
        std::vector<VertexSet> kept;
        for (const auto& h : sorted) {
            if (h.empty()) continue;
            bool subsumed = false;
            for (const auto& k : kept)
                if (is_subset(h, k)) subsumed = true;
            if (!subsumed) kept.push_back(h);
        }
        const std::size_t removed = hyperedges.size() - kept.size();
        std::sort(kept.begin(), kept.end());
        hyperedges = std::move(kept);
        return removed;
    }

    bool is_reduced() const {
        for (std::size_t i = 0; i < hyperedges.size(); ++i)
            for (std::size_t j = 0; j < hyperedges.size(); ++j)
                if (i != j && is_subset(hyperedges[i], hyperedges[j])) return false;
        return true;
    }
};

struct HypergraphTree {
    SeparationTree tree;
    /// Hyperedges dropped while reducing the input (0 if it was already reduced).
    std::size_t dropped_hyperedges = 0;
};

/// Union of a complete graph per hyperedge, triangulated, then junction tree.
/// Yields an m-separation tree when, for each chain component tau of the
/// unknown graph, some hyperedge contains tau together with pa(tau).
inline HypergraphTree tree_from_hypergraph(Hypergraph h) {
    if (h.hyperedges.empty()) throw EmptyHypergraph("hypergraph has no hyperedges");
    HypergraphTree out;
    out.dropped_hyperedges = h.reduce();
    if (h.hyperedges.empty()) throw EmptyHypergraph("hypergraph has only empty hyperedges");

    const std::size_t p = h.names.size();
    VertexSet covered;
    for (const auto& e : h.hyperedges) {
        if (!e.empty() && *e.rbegin() >= p) throw Error("hyperedge vertex out of range");
        covered.insert(e.begin(), e.end());
    }
    if (covered.size() != p) throw Error("hyperedges do not cover every vertex");

    UndirectedGraph g(p);
    for (const auto& e : h.hyperedges) g.make_complete(e);
    out.tree = tree_from_uig(g);
    return out;
}

/// The reduced family {tau u pa(tau)} over the chain components of g.
inline Hypergraph component_hypergraph(const MixedGraph& g) {
    Hypergraph h;
    h.names = g.names();
    for (const auto& tau : chain_components(g).components) h.hyperedges.push_back(set_union(tau, parents_of_set(g, tau)));
    h.reduce();
    return h;
}

/// {v u pa(v)} per vertex. Not sufficient for chain graphs in general.
inline Hypergraph vertex_parent_hypergraph(const MixedGraph& g) {
    Hypergraph h;
    h.names = g.names();
    for (Vertex v = 0; v < g.size(); ++v) {
        VertexSet e = g.parents(v);
        e.insert(v);
        h.hyperedges.push_back(std::move(e));
    }
    h.reduce();
    return h;
}

/// {v u bd(v)} per vertex. Not sufficient for chain graphs in general.
inline Hypergraph vertex_boundary_hypergraph(const MixedGraph& g) {
    Hypergraph h;
    h.names = g.names();
    for (Vertex v = 0; v < g.size(); ++v) {
        VertexSet e = boundary(g, v);
        e.insert(v);
        h.hyperedges.push_back(std::move(e));
    }
    h.reduce();
    return h;
}

// ---------------------------------------------------------------------------
// Validation

struct TreeViolation {
    enum class Kind { Coverage, Structure, Separation };
    Kind kind;
    std::size_t edge = 0;  // meaningful for Structure and Separation
    std::string message;
};

/// Empty iff t is an m-separation tree for g. Exponential-free but performs one
/// m-separation query per tree edge.
inline std::vector<TreeViolation> validate_tree(const SeparationTree& t, const MixedGraph& g) {
    std::vector<TreeViolation> out;
    VertexSet covered;
    for (const auto& c : t.nodes) covered.insert(c.begin(), c.end());
    const VertexSet all = range_set(g.size());
    if (covered != all) {
        std::string missing;
        for (Vertex v : set_difference(all, covered)) missing += " " + g.name(v);
        out.push_back({TreeViolation::Kind::Coverage, 0, "vertices not covered by any node:" + missing});
    }
    if (!covered.empty() && *covered.rbegin() >= g.size()) {
        out.push_back({TreeViolation::Kind::Coverage, 0, "node contains a vertex outside the graph"});
        return out;
    }
    if (!t.nodes.empty() && t.edges.size() + 1 != t.nodes.size())
        out.push_back({TreeViolation::Kind::Structure, 0, "edge count is not nodes - 1"});

    for (std::size_t e = 0; e < t.edges.size(); ++e) {
        const auto& ed = t.edges[e];
        if (ed.a >= t.nodes.size() || ed.b >= t.nodes.size()) {
            out.push_back({TreeViolation::Kind::Structure, e, "edge endpoint out of range"});
            continue;
        }
        const VertexSet& s = ed.separator;
        if (s != set_intersection(t.nodes[ed.a], t.nodes[ed.b])) {
            out.push_back({TreeViolation::Kind::Structure, e, "separator differs from node intersection"});
            continue;
        }
        const VertexSet v1 = set_difference(t.side_vertices(e, ed.a), s);
        const VertexSet v2 = set_difference(t.side_vertices(e, ed.b), s);
        if (v1.empty() || v2.empty()) continue;
        if (!are_disjoint(v1, v2)) {
            out.push_back({TreeViolation::Kind::Structure, e, "sides overlap outside the separator"});
            continue;
        }
        if (!m_separated(g, v1, v2, s)) {
            std::string sep;
            for (Vertex v : s) sep += " " + g.name(v);
            out.push_back({TreeViolation::Kind::Separation, e, "separator {" + sep + " } does not m-separate the sides"});
        }
    }
    return out;
}

/// Vertices u for which no node contains u together with bd(u). Always empty
/// for a valid m-separation tree.
inline std::vector<Vertex> vertices_without_boundary_node(const SeparationTree& t, const MixedGraph& g) {
    std::vector<Vertex> out;
    for (Vertex u = 0; u < g.size(); ++u) {
        VertexSet need = boundary(g, u);
        need.insert(u);
        bool found = false;
        for (const auto& c : t.nodes)
            if (is_subset(need, c)) found = true;
        if (!found) out.push_back(u);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Text formats

inline constexpr const char* kHypergraphHeader = "# hypergraph v1";
inline constexpr const char* kTreeHeader = "# septree v1";

/// One hyperedge per line as space-separated names. The universe is `names`
/// when given, else the names in order of first appearance.
inline Hypergraph read_hypergraph(std::istream& in, const std::vector<std::string>* universe = nullptr) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line) || detail::trim(line) != kHypergraphHeader)
        throw ParseError("hypergraph line 1: expected header '" + std::string(kHypergraphHeader) + "'");
    ++lineno;
    Hypergraph h;
    std::map<std::string, Vertex> index;
    if (universe) {
        h.names = *universe;
        for (Vertex v = 0; v < universe->size(); ++v) index.emplace((*universe)[v], v);
    }
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = detail::trim(line);
        if (t.empty() || t.front() == '#') continue;
        VertexSet e;
        for (const auto& nm : detail::split_ws(t)) {
            auto it = index.find(nm);
            if (it == index.end()) {
                if (universe) throw ParseError("hypergraph line " + std::to_string(lineno) + ": unknown vertex '" + nm + "'");
                it = index.emplace(nm, h.names.size()).first;
                h.names.push_back(nm);
            }
            e.insert(it->second);
        }
        h.hyperedges.push_back(std::move(e));
    }
    return h;
}

inline void write_hypergraph(std::ostream& out, const Hypergraph& h) {
    out << kHypergraphHeader << '\n';
    for (const auto& e : h.hyperedges) {
        bool first = true;
        for (Vertex v : e) {
            out << (first ? "" : " ") << h.names.at(v);
            first = false;
        }
        out << '\n';
    }
}

/// Tree format:
///
///     # septree v1
///     node 0: a b
///     node 1: b c
///     edge 0 1: b
inline void write_tree(std::ostream& out, const SeparationTree& t, const std::vector<std::string>& names) {
    out << kTreeHeader << '\n';
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        out << "node " << i << ':';
        for (Vertex v : t.nodes[i]) out << ' ' << names.at(v);
        out << '\n';
    }
    for (const auto& e : t.edges) {
        out << "edge " << e.a << ' ' << e.b << ':';
        for (Vertex v : e.separator) out << ' ' << names.at(v);
        out << '\n';
    }
}

inline SeparationTree read_tree(std::istream& in, const std::vector<std::string>& names) {
    std::map<std::string, Vertex> index;
    for (Vertex v = 0; v < names.size(); ++v) index.emplace(names[v], v);
    std::string line;
    std::size_t lineno = 1;
    if (!std::getline(in, line) || detail::trim(line) != kTreeHeader)
        throw ParseError("tree line 1: expected header '" + std::string(kTreeHeader) + "'");
    auto fail = [&](const std::string& msg) { return ParseError("tree line " + std::to_string(lineno) + ": " + msg); };
    auto parse_set = [&](const std::string& text) {
        VertexSet s;
        for (const auto& nm : detail::split_ws(text)) {
            auto it = index.find(nm);
            if (it == index.end()) throw fail("unknown vertex '" + nm + "'");
            s.insert(it->second);
        }
        return s;
    };
    SeparationTree t;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string s = detail::trim(line);
        if (s.empty() || s.front() == '#') continue;
        const auto colon = s.find(':');
        if (colon == std::string::npos) throw fail("missing ':'");
        const auto head = detail::split_ws(s.substr(0, colon));
        const std::string body = s.substr(colon + 1);
        try {
            if (head.size() == 2 && head[0] == "node") {
                if (std::stoul(head[1]) != t.nodes.size()) throw fail("nodes must be numbered consecutively");
                t.nodes.push_back(parse_set(body));
            } else if (head.size() == 3 && head[0] == "edge") {
                t.edges.push_back({std::stoul(head[1]), std::stoul(head[2]), parse_set(body)});
            } else {
                throw fail("expected 'node <i>:' or 'edge <i> <j>:'");
            }
        } catch (const std::logic_error&) {
            throw fail("bad index");
        }
    }
    return t;
}

}  // namespace mvrcg
