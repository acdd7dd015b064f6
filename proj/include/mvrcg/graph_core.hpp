#pragma once

#include <algorithm>
#include <compare>
#include <deque>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "mvrcg/errors.hpp"
#include "mvrcg/mixed_graph.hpp"
#include "mvrcg/undirected_graph.hpp"
#include "mvrcg/vertex_set.hpp"

namespace mvrcg {

namespace detail {

inline void check_vertices(const MixedGraph& g, const VertexSet& s) {
    if (!s.empty() && *s.rbegin() >= g.size())
        throw GraphError("vertex index " + std::to_string(*s.rbegin()) + " out of range");
}

inline void check_separation_sets(const MixedGraph& g, const VertexSet& x, const VertexSet& y, const VertexSet& z) {
    if (x.empty() || y.empty()) throw OverlappingSets("X and Y must be non-empty");
    check_vertices(g, x);
    check_vertices(g, y);
    check_vertices(g, z);
    if (!are_disjoint(x, y) || !are_disjoint(x, z) || !are_disjoint(y, z))
        throw OverlappingSets("X, Y and Z must be pairwise disjoint");
}

}  // namespace detail

/// True iff some sequence of distinct vertices v1..vn (n >= 3) closes into a
/// cycle whose every step is v_i -> v_{i+1} or v_i <-> v_{i+1}, with at least
/// one directed step. Undirected edges never take part.
inline bool has_partially_directed_cycle(const MixedGraph& g) {
    const std::size_t p = g.size();
    std::vector<char> seen(p);
    for (Vertex u = 0; u < p; ++u) {
        for (Vertex v : g.children(u)) {
            // search v => u along edges with an arrowhead at the far end
            std::fill(seen.begin(), seen.end(), 0);
            std::deque<Vertex> queue{v};
            seen[v] = 1;
            while (!queue.empty()) {
                const Vertex x = queue.front();
                queue.pop_front();
                for (Vertex y : g.adjacent(x)) {
                    if (seen[y] || g.mark(y, x) != Mark::Arrow) continue;
                    if (y == u) return true;
                    seen[y] = 1;
                    queue.push_back(y);
                }
            }
        }
    }
    return false;
}

/// Directed and bidirected edges only, and no partially directed cycle.
inline bool is_mvr_cg(const MixedGraph& g) {
    for (auto [u, v] : g.edge_pairs())
        if (g.is_undirected(u, v)) return false;
    return !has_partially_directed_cycle(g);
}

struct ChainComponents {
    /// Cells ordered by their smallest vertex.
    std::vector<VertexSet> components;
    std::vector<std::size_t> component_of;
    /// (i, j) whenever some edge a -> b has a in component i and b in component j.
    std::set<std::pair<std::size_t, std::size_t>> edges;
};

inline ChainComponents chain_components(const MixedGraph& g) {
    if (!is_mvr_cg(g)) throw NotChainGraph("chain_components requires an MVR chain graph");
    const std::size_t p = g.size();
    std::vector<std::size_t> parent(p);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [u, v] : g.edge_pairs())
        if (g.is_bidirected(u, v)) parent[std::max(find(u), find(v))] = std::min(find(u), find(v));

    ChainComponents out;
    out.component_of.assign(p, 0);
    std::vector<std::size_t> root_to_cell(p, p);
    for (Vertex v = 0; v < p; ++v) {
        const std::size_t r = find(v);
        if (root_to_cell[r] == p) {
            root_to_cell[r] = out.components.size();
            out.components.emplace_back();
        }
        out.component_of[v] = root_to_cell[r];
        out.components[root_to_cell[r]].insert(v);
    }
    for (auto [u, v] : g.edge_pairs()) {
        if (g.is_directed(u, v)) out.edges.emplace(out.component_of[u], out.component_of[v]);
        else if (g.is_directed(v, u)) out.edges.emplace(out.component_of[v], out.component_of[u]);
    }
    return out;
}

/// An(X): X together with every vertex having a directed path into X.
inline VertexSet ancestors(const MixedGraph& g, const VertexSet& x) {
    detail::check_vertices(g, x);
    VertexSet out = x;
    std::deque<Vertex> queue(x.begin(), x.end());
    while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop_front();
        for (Vertex u : g.parents(v))
            if (out.insert(u).second) queue.push_back(u);
    }
    return out;
}

/// bd(v): parents and bidirected neighbours of v.
inline VertexSet boundary(const MixedGraph& g, Vertex v) { return set_union(g.parents(v), g.spouses(v)); }

/// pa(A) minus A.
inline VertexSet parents_of_set(const MixedGraph& g, const VertexSet& a) {
    VertexSet out;
    for (Vertex v : a) {
        auto pa = g.parents(v);
        out.insert(pa.begin(), pa.end());
    }
    return set_difference(out, a);
}

/// Augmented graph of the subgraph induced by `within`: c -- d whenever c and d
/// are joined by a chain inside `within` whose every non-endpoint is a collider.
inline UndirectedGraph augmented_graph(const MixedGraph& g, const VertexSet& within) {
    detail::check_vertices(g, within);
    const std::size_t p = g.size();
    UndirectedGraph out(p);
    std::vector<char> inside(p, 0);
    for (Vertex v : within) inside[v] = 1;

    // A collider walk shortcuts to a collider chain, so a reachability search
    // over (vertex, entered-with-arrowhead) states is exact.
    std::vector<char> reached(p), can_extend(p);
    for (Vertex c : within) {
        std::fill(reached.begin(), reached.end(), 0);
        std::fill(can_extend.begin(), can_extend.end(), 0);
        std::deque<Vertex> queue;
        for (Vertex x : g.adjacent(c)) {
            if (!inside[x]) continue;
            reached[x] = 1;
            if (g.mark(x, c) == Mark::Arrow && !can_extend[x]) {
                can_extend[x] = 1;
                queue.push_back(x);
            }
        }
        while (!queue.empty()) {
            const Vertex x = queue.front();
            queue.pop_front();
            for (Vertex y : g.adjacent(x)) {
                if (!inside[y] || y == c || g.mark(x, y) != Mark::Arrow) continue;
                reached[y] = 1;
                if (g.mark(y, x) == Mark::Arrow && !can_extend[y]) {
                    can_extend[y] = 1;
                    queue.push_back(y);
                }
            }
        }
        for (Vertex d : within)
            if (d != c && reached[d]) out.add_edge(c, d);
    }
    return out;
}

inline UndirectedGraph augmented_graph(const MixedGraph& g) { return augmented_graph(g, range_set(g.size())); }

/// m-separation via the augmented graph of the ancestral set An(X u Y u Z).
inline bool m_separated(const MixedGraph& g, const VertexSet& x, const VertexSet& y, const VertexSet& z) {
    detail::check_separation_sets(g, x, y, z);
    const VertexSet an = ancestors(g, set_union(set_union(x, y), z));
    return u_separated(augmented_graph(g, an), x, y, z);
}

/// m-separation by enumerating every simple chain between X and Y and checking
/// it against the m-connection definition. Exponential; for small graphs only.
inline bool m_separated_bruteforce(const MixedGraph& g, const VertexSet& x, const VertexSet& y, const VertexSet& z) {
    detail::check_separation_sets(g, x, y, z);
    const VertexSet an_z = ancestors(g, z);
    std::vector<char> on_path(g.size(), 0);
    std::vector<Vertex> path;

    // returns true once an m-connecting chain to `target` is found
    auto extend = [&](auto&& self, Vertex target) -> bool {
        const Vertex cur = path.back();
        for (Vertex next : g.adjacent(cur)) {
            if (on_path[next]) continue;
            if (path.size() >= 2) {
                const Vertex prev = path[path.size() - 2];
                const bool collider = g.mark(cur, prev) == Mark::Arrow && g.mark(cur, next) == Mark::Arrow;
                if (collider && !an_z.count(cur)) continue;
                if (!collider && z.count(cur)) continue;
            }
            if (next == target) return true;
            on_path[next] = 1;
            path.push_back(next);
            const bool found = self(self, target);
            path.pop_back();
            on_path[next] = 0;
            if (found) return true;
        }
        return false;
    };

    for (Vertex a : x) {
        for (Vertex b : y) {
            path = {a};
            std::fill(on_path.begin(), on_path.end(), 0);
            on_path[a] = 1;
            if (extend(extend, b)) return false;
        }
    }
    return true;
}

/// Topological order over directed edges (ties by index). Throws NotAcyclic on
/// a directed cycle or on any non-directed edge.
inline std::vector<Vertex> topological_order(const MixedGraph& g) {
    const std::size_t p = g.size();
    std::vector<std::size_t> indegree(p, 0);
    for (auto [u, v] : g.edge_pairs()) {
        if (g.is_directed(u, v)) ++indegree[v];
        else if (g.is_directed(v, u)) ++indegree[u];
        else throw NotAcyclic("graph has a non-directed edge between '" + g.name(u) + "' and '" + g.name(v) + "'");
    }
    std::set<Vertex> ready;
    for (Vertex v = 0; v < p; ++v)
        if (indegree[v] == 0) ready.insert(v);
    std::vector<Vertex> order;
    order.reserve(p);
    while (!ready.empty()) {
        const Vertex v = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(v);
        for (Vertex c : g.children(v))
            if (--indegree[c] == 0) ready.insert(c);
    }
    if (order.size() != p) throw NotAcyclic("graph has a directed cycle");
    return order;
}

struct CanonicalDag {
    MixedGraph dag;
    /// Indices p.. of the added latent vertices.
    VertexSet latents;
};

/// Replaces every u <-> v by u <- H_u_v -> v.
inline CanonicalDag canonical_dag(const MixedGraph& g) {
    if (!is_mvr_cg(g)) throw NotChainGraph("canonical_dag requires an MVR chain graph");
    std::vector<std::string> names = g.names();
    std::set<std::string> taken(names.begin(), names.end());
    std::vector<VertexPair> bidirected;
    for (auto [u, v] : g.edge_pairs()) {
        if (!g.is_bidirected(u, v)) continue;
        std::string nm = "H_" + g.name(u) + "_" + g.name(v);
        while (taken.count(nm)) nm += "_";
        taken.insert(nm);
        names.push_back(nm);
        bidirected.emplace_back(u, v);
    }
    CanonicalDag out{MixedGraph(std::move(names)), {}};
    for (auto [u, v] : g.edge_pairs()) {
        if (g.is_directed(u, v)) out.dag.add_directed(u, v);
        else if (g.is_directed(v, u)) out.dag.add_directed(v, u);
    }
    Vertex h = g.size();
    for (auto [u, v] : bidirected) {
        out.dag.add_directed(h, u);
        out.dag.add_directed(h, v);
        out.latents.insert(h++);
    }
    return out;
}

struct Projection {
    /// Graph over the observed vertices, in original index order.
    MixedGraph graph;
    /// observed[i] is the index in the input DAG of projected vertex i.
    std::vector<Vertex> observed;
    /// Pairs (projected indices) that received both a directed path and a
    /// latent trek. They are emitted as u <-> v.
    std::vector<VertexPair> conflicts;

    bool clean() const { return conflicts.empty(); }
};

/// Marginalises the latent vertices out of a DAG:
///   u -> v   if a directed path u -> ... -> v has only latent intermediates;
///   u <-> v  if a latent h reaches both u and v through latent-only directed paths.
inline Projection latent_project(const MixedGraph& dag, const VertexSet& latent) {
    detail::check_vertices(dag, latent);
    topological_order(dag);  // throws NotAcyclic

    const std::size_t p = dag.size();
    Projection out;
    std::vector<std::size_t> proj_index(p, p);
    std::vector<std::string> names;
    for (Vertex v = 0; v < p; ++v) {
        if (latent.count(v)) continue;
        proj_index[v] = out.observed.size();
        out.observed.push_back(v);
        names.push_back(dag.name(v));
    }
    out.graph = MixedGraph(std::move(names));

    // observed vertices reachable from `src` through latent-only intermediates
    auto observed_reach = [&](Vertex src) {
        VertexSet found;
        std::vector<char> seen(p, 0);
        std::deque<Vertex> queue{src};
        seen[src] = 1;
        while (!queue.empty()) {
            const Vertex x = queue.front();
            queue.pop_front();
            for (Vertex c : dag.children(x)) {
                if (seen[c]) continue;
                seen[c] = 1;
                if (latent.count(c)) queue.push_back(c);
                else found.insert(proj_index[c]);
            }
        }
        return found;
    };

    const std::size_t q = out.observed.size();
    std::set<VertexPair> directed;  // (from, to)
    std::set<VertexPair> treks;     // unordered
    for (Vertex i = 0; i < q; ++i)
        for (Vertex j : observed_reach(out.observed[i])) directed.emplace(i, j);
    for (Vertex h : latent) {
        const VertexSet reach = observed_reach(h);
        for (auto a = reach.begin(); a != reach.end(); ++a)
            for (auto b = std::next(a); b != reach.end(); ++b) treks.emplace(*a, *b);
    }
    for (auto [a, b] : treks) {
        out.graph.add_bidirected(a, b);
        if (directed.count({a, b}) || directed.count({b, a})) out.conflicts.emplace_back(a, b);
    }
    for (auto [from, to] : directed)
        if (!treks.count(make_pair_key(from, to))) out.graph.add_directed(from, to);
    return out;
}

/// Skeleton: every edge with its marks dropped.
inline UndirectedGraph skeleton(const MixedGraph& g) {
    UndirectedGraph out(g.size());
    for (auto [u, v] : g.edge_pairs()) out.add_edge(u, v);
    return out;
}

/// Unshielded collider a *-> mid <-* b with a < b and a, b non-adjacent.
struct VStructure {
    Vertex a;
    Vertex mid;
    Vertex b;
    auto operator<=>(const VStructure&) const = default;
};

inline std::set<VStructure> v_structures(const MixedGraph& g) {
    std::set<VStructure> out;
    for (Vertex w = 0; w < g.size(); ++w) {
        const VertexSet& nb = g.adjacent(w);
        for (auto i = nb.begin(); i != nb.end(); ++i) {
            if (g.mark(w, *i) != Mark::Arrow) continue;
            for (auto j = std::next(i); j != nb.end(); ++j) {
                if (g.mark(w, *j) == Mark::Arrow && !g.has_edge(*i, *j)) out.insert({*i, w, *j});
            }
        }
    }
    return out;
}

}  // namespace mvrcg
