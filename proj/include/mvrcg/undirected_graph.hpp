#pragma once

#include <cstddef>
#include <deque>
#include <string>
#include <vector>

#include "mvrcg/errors.hpp"
#include "mvrcg/vertex_set.hpp"

namespace mvrcg {

/// Simple undirected graph over vertices 0..p-1.
class UndirectedGraph {
public:
    UndirectedGraph() = default;
    explicit UndirectedGraph(std::size_t p) : adj_(p) {}

    static UndirectedGraph complete(std::size_t p) {
        UndirectedGraph g(p);
        for (Vertex u = 0; u < p; ++u)
            for (Vertex v = u + 1; v < p; ++v) g.add_edge(u, v);
        return g;
    }

    std::size_t size() const { return adj_.size(); }

    bool adjacent(Vertex u, Vertex v) const {
        check(u);
        return adj_[u].count(v) > 0;
    }

    /// Idempotent.
    void add_edge(Vertex u, Vertex v) {
        check(u);
        check(v);
        if (u == v) throw GraphError("self-loop on vertex " + std::to_string(u));
        adj_[u].insert(v);
        adj_[v].insert(u);
    }

    void remove_edge(Vertex u, Vertex v) {
        check(u);
        check(v);
        adj_[u].erase(v);
        adj_[v].erase(u);
    }

    /// Adds every edge among `vs`.
    void make_complete(const VertexSet& vs) {
        for (auto i = vs.begin(); i != vs.end(); ++i)
            for (auto j = std::next(i); j != vs.end(); ++j) add_edge(*i, *j);
    }

    const VertexSet& neighbors(Vertex u) const {
        check(u);
        return adj_[u];
    }

    std::size_t edge_count() const {
        std::size_t twice = 0;
        for (const auto& nb : adj_) twice += nb.size();
        return twice / 2;
    }

    std::vector<VertexPair> edges() const {
        std::vector<VertexPair> out;
        for (Vertex u = 0; u < adj_.size(); ++u)
            for (Vertex v : adj_[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    bool is_clique(const VertexSet& vs) const {
        for (auto i = vs.begin(); i != vs.end(); ++i)
            for (auto j = std::next(i); j != vs.end(); ++j)
                if (!adjacent(*i, *j)) return false;
        return true;
    }

    bool operator==(const UndirectedGraph&) const = default;

private:
    void check(Vertex u) const {
        if (u >= adj_.size()) throw GraphError("vertex index " + std::to_string(u) + " out of range");
    }

    std::vector<VertexSet> adj_;
};

/// True iff every path between X and Y passes through Z.
inline bool u_separated(const UndirectedGraph& g, const VertexSet& x, const VertexSet& y, const VertexSet& z) {
    if (x.empty() || y.empty()) throw OverlappingSets("u_separated: X and Y must be non-empty");
    if (!are_disjoint(x, y) || !are_disjoint(x, z) || !are_disjoint(y, z))
        throw OverlappingSets("u_separated: X, Y, Z must be pairwise disjoint");

    std::vector<char> seen(g.size(), 0);
    for (Vertex b : z) seen[b] = 1;
    std::deque<Vertex> queue;
    for (Vertex a : x) {
        seen[a] = 1;
        queue.push_back(a);
    }
    while (!queue.empty()) {
        const Vertex u = queue.front();
        queue.pop_front();
        for (Vertex w : g.neighbors(u)) {
            if (seen[w]) continue;
            if (y.count(w)) return false;
            seen[w] = 1;
            queue.push_back(w);
        }
    }
    return true;
}

}  // namespace mvrcg
