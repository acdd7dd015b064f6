#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#include "mvrcg/errors.hpp"
#include "mvrcg/undirected_graph.hpp"
#include "mvrcg/vertex_set.hpp"

namespace mvrcg {

/// Greedy min-fill triangulation. The vertex with the fewest fill-in edges is
/// eliminated first; ties go to the smallest index. Deterministic.
inline UndirectedGraph triangulate(const UndirectedGraph& g) {
    const std::size_t p = g.size();
    UndirectedGraph out = g;
    UndirectedGraph work = g;
    std::vector<char> eliminated(p, 0);

    auto fill_count = [&](Vertex v) {
        std::size_t missing = 0;
        const VertexSet& nb = work.neighbors(v);
        for (auto i = nb.begin(); i != nb.end(); ++i)
            for (auto j = std::next(i); j != nb.end(); ++j)
                if (!work.adjacent(*i, *j)) ++missing;
        return missing;
    };

    for (std::size_t step = 0; step < p; ++step) {
        Vertex best = p;
        std::size_t best_fill = std::numeric_limits<std::size_t>::max();
        for (Vertex v = 0; v < p; ++v) {
            if (eliminated[v]) continue;
            const std::size_t f = fill_count(v);
            if (f < best_fill) {
                best_fill = f;
                best = v;
            }
        }
        const VertexSet nb = work.neighbors(best);
        for (auto i = nb.begin(); i != nb.end(); ++i) {
            for (auto j = std::next(i); j != nb.end(); ++j) {
                work.add_edge(*i, *j);
                out.add_edge(*i, *j);
            }
        }
        for (Vertex w : nb) work.remove_edge(best, w);
        eliminated[best] = 1;
    }
    return out;
}

/// Maximum cardinality search visiting order (ties by smallest index).
inline std::vector<Vertex> max_cardinality_order(const UndirectedGraph& g) {
    const std::size_t p = g.size();
    std::vector<std::size_t> weight(p, 0);
    std::vector<char> visited(p, 0);
    std::vector<Vertex> order;
    order.reserve(p);
    for (std::size_t step = 0; step < p; ++step) {
        Vertex best = p;
        for (Vertex v = 0; v < p; ++v)
            if (!visited[v] && (best == p || weight[v] > weight[best])) best = v;
        visited[best] = 1;
        order.push_back(best);
        for (Vertex w : g.neighbors(best))
            if (!visited[w]) ++weight[w];
    }
    return order;
}

/// Chordality via the zero-fill test on a maximum cardinality search order.
inline bool is_chordal(const UndirectedGraph& g) {
    const auto order = max_cardinality_order(g);
    std::vector<std::size_t> position(g.size());
    for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const Vertex v = order[i];
        // earlier neighbours of v must form a clique; enough to check that all
        // of them are adjacent to the latest one
        Vertex latest = g.size();
        for (Vertex w : g.neighbors(v))
            if (position[w] < i && (latest == g.size() || position[w] > position[latest])) latest = w;
        if (latest == g.size()) continue;
        for (Vertex w : g.neighbors(v))
            if (position[w] < i && w != latest && !g.adjacent(w, latest)) return false;
    }
    return true;
}

/// Maximal cliques of a chordal graph, each sorted, list in lexicographic order.
/// Isolated vertices give singleton cliques.
inline std::vector<VertexSet> max_cliques_chordal(const UndirectedGraph& g) {
    if (!is_chordal(g)) throw NotChordal("max_cliques_chordal requires a chordal graph");
    const auto order = max_cardinality_order(g);
    std::vector<std::size_t> position(g.size());
    for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;

    // The reverse of an MCS order is a perfect elimination order, so each
    // vertex plus its earlier-visited neighbours is a clique.
    std::vector<VertexSet> candidates;
    for (std::size_t i = 0; i < order.size(); ++i) {
        VertexSet c{order[i]};
        for (Vertex w : g.neighbors(order[i]))
            if (position[w] < i) c.insert(w);
        candidates.push_back(std::move(c));
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::vector<VertexSet> out;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        bool maximal = true;
        for (std::size_t j = 0; j < candidates.size() && maximal; ++j)
            if (i != j && candidates[i].size() < candidates[j].size() && is_subset(candidates[i], candidates[j]))
                maximal = false;
        if (maximal) out.push_back(candidates[i]);
    }
    return out;
}

struct CliqueTreeEdge {
    std::size_t a;
    std::size_t b;
    VertexSet separator;  // cliques[a] n cliques[b]
    bool operator==(const CliqueTreeEdge&) const = default;
};

struct CliqueTree {
    std::vector<VertexSet> cliques;
    std::vector<CliqueTreeEdge> edges;
};

/// Junction tree of a chordal graph: Kruskal maximum-weight spanning tree over
/// clique intersection sizes, ties by smaller (i, j). Disconnected parts are
/// joined through empty separators.
inline CliqueTree junction_tree(const UndirectedGraph& g) {
    CliqueTree tree;
    tree.cliques = max_cliques_chordal(g);
    const std::size_t h = tree.cliques.size();

    struct Candidate {
        std::size_t weight, a, b;
    };
    std::vector<Candidate> candidates;
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = i + 1; j < h; ++j)
            candidates.push_back({set_intersection(tree.cliques[i], tree.cliques[j]).size(), i, j});
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& x, const Candidate& y) { return x.weight > y.weight; });

    std::vector<std::size_t> root(h);
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](std::size_t x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    };
    for (const auto& c : candidates) {
        const std::size_t ra = find(c.a), rb = find(c.b);
        if (ra == rb) continue;
        root[ra] = rb;
        tree.edges.push_back({c.a, c.b, set_intersection(tree.cliques[c.a], tree.cliques[c.b])});
        if (tree.edges.size() + 1 == h) break;
    }
    return tree;
}

/// Cliques containing any given vertex form a connected subtree.
inline bool has_running_intersection(const std::vector<VertexSet>& nodes, const std::vector<CliqueTreeEdge>& edges) {
    VertexSet all;
    for (const auto& c : nodes) all.insert(c.begin(), c.end());
    for (Vertex v : all) {
        std::vector<std::size_t> holders;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (nodes[i].count(v)) holders.push_back(i);
        // connected iff the edges among holders number holders-1 (tree subgraph)
        std::size_t inner = 0;
        for (const auto& e : edges)
            if (nodes[e.a].count(v) && nodes[e.b].count(v)) ++inner;
        if (inner + 1 != holders.size()) return false;
    }
    return true;
}

}  // namespace mvrcg
