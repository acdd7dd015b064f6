#pragma once

#include <algorithm>
#include <array>
#include <deque>
#include <string>
#include <vector>

#include "mvrcg/chordal.hpp"
#include "mvrcg/errors.hpp"
#include "mvrcg/mixed_graph.hpp"
#include "mvrcg/sepset.hpp"
#include "mvrcg/undirected_graph.hpp"

namespace mvrcg {

/// Pattern over the skeleton with arrowheads at every unshielded collider
/// u *-> w <-* v such that S_uv was recorded and excludes w.
inline Pattern orient_v_structures(const UndirectedGraph& skel, const SepsetMap& sepsets,
                                   const std::vector<std::string>& names) {
    if (names.size() != skel.size()) throw VertexMismatch("orient_v_structures: name count differs from skeleton size");
    Pattern pat(names);
    for (auto [u, v] : skel.edges()) pat.add_undirected(u, v);
    for (const auto& [pair, s] : sepsets) {
        const auto [u, v] = pair;
        if (skel.adjacent(u, v)) continue;
        for (Vertex w : set_intersection(skel.neighbors(u), skel.neighbors(v))) {
            if (s.count(w)) continue;
            pat.add_arrowhead(w, u);
            pat.add_arrowhead(w, v);
        }
    }
    return pat;
}

enum class Rule { R1, R2, R3 };

namespace detail {

// Each rule adds an arrowhead at b on {a, b} only while that mark is a tail,
// so every pass is monotone and the closure is order independent.

inline bool apply_r1(Pattern& g) {
    bool changed = false;
    const std::size_t p = g.size();
    for (Vertex v = 0; v < p; ++v) {
        for (Vertex u : VertexSet(g.adjacent(v))) {
            if (!g.arrow_at(v, u)) continue;
            for (Vertex w : VertexSet(g.adjacent(v))) {
                if (w == u || g.has_edge(u, w)) continue;
                if (g.tail_at(v, w) && g.tail_at(w, v)) changed |= g.add_arrowhead(w, v);
            }
        }
    }
    return changed;
}

inline bool apply_r2(Pattern& g) {
    bool changed = false;
    const std::size_t p = g.size();
    for (Vertex v = 0; v < p; ++v) {
        for (Vertex u : VertexSet(g.adjacent(v))) {
            if (!g.arrow_at(v, u)) continue;
            for (Vertex w : VertexSet(g.adjacent(v))) {
                if (w == u || !g.arrow_at(w, v)) continue;
                if (g.has_edge(u, w) && g.tail_at(w, u)) changed |= g.add_arrowhead(w, u);
            }
        }
    }
    return changed;
}

inline bool apply_r3(Pattern& g) {
    bool changed = false;
    const std::size_t p = g.size();
    for (Vertex a = 0; a < p; ++a) {
        for (Vertex b : VertexSet(g.adjacent(a))) {
            if (!g.tail_at(b, a)) continue;
            std::vector<Vertex> mids;
            for (Vertex m : set_intersection(g.adjacent(a), g.adjacent(b)))
                if (g.tail_at(a, m) && g.arrow_at(b, m)) mids.push_back(m);
            bool fire = false;
            for (std::size_t i = 0; i < mids.size() && !fire; ++i)
                for (std::size_t j = i + 1; j < mids.size() && !fire; ++j)
                    if (!g.has_edge(mids[i], mids[j])) fire = true;
            if (fire) changed |= g.add_arrowhead(b, a);
        }
    }
    return changed;
}

inline bool apply_rule(Pattern& g, Rule r) {
    switch (r) {
        case Rule::R1: return apply_r1(g);
        case Rule::R2: return apply_r2(g);
        case Rule::R3: return apply_r3(g);
    }
    return false;
}

}  // namespace detail

/// Closes the pattern under R1-R3, applied in `order` and rescanned from the
/// first rule after any change, until nothing changes.
///
///   R1: u *-> v, tail at v on v - w, u and w non-adjacent  => arrow at w
///   R2: u *-> v *-> w with a tail at w on u - w  => arrow at w on u - w
///   R3: tails at a towards m1 and m2, m1 *-> b <-* m2, m1 and m2 non-adjacent,
///       a - b adjacent  => arrow at b on a - b
inline Pattern apply_rules(Pattern g, const std::array<Rule, 3>& order = {Rule::R1, Rule::R2, Rule::R3}) {
    for (bool again = true; again;) {
        again = false;
        for (Rule r : order) {
            if (detail::apply_rule(g, r)) {
                again = true;
                break;
            }
        }
    }
    return g;
}

struct MinBidirectedOptions {
    /// Triangulate a non-chordal undirected part instead of throwing. Needed
    /// for finite-sample patterns; an oracle pattern is always chordal.
    bool triangulate_if_needed = false;
};

struct MinBidirectedResult {
    MixedGraph graph;
    bool triangulated = false;
};

/// Orients every undirected edge of the pattern from lower to higher rank,
/// where ranks come from a breadth-first walk over the junction tree of the
/// undirected part rooted at the clique with the smallest vertex.
inline MinBidirectedResult minimum_bidirected_ex(const Pattern& pat, const MinBidirectedOptions& opt = {}) {
    const std::size_t p = pat.size();
    UndirectedGraph und(p);
    for (auto [u, v] : pat.edge_pairs())
        if (pat.is_undirected(u, v)) und.add_edge(u, v);

    MinBidirectedResult res{pat, false};
    if (und.edge_count() == 0) return res;
    UndirectedGraph chordal = und;
    if (!is_chordal(und)) {
        if (!opt.triangulate_if_needed) throw NotChordal("undirected part of the pattern is not chordal");
        chordal = triangulate(und);
        res.triangulated = true;
    }

    const CliqueTree tree = junction_tree(chordal);
    const std::size_t h = tree.cliques.size();
    std::vector<VertexSet> nbrs(h);
    for (const auto& e : tree.edges) {
        nbrs[e.a].insert(e.b);
        nbrs[e.b].insert(e.a);
    }
    // cliques are in lexicographic order, so the smallest minimum vertex comes
    // first; an unreached clique (disconnected part) starts a new walk
    std::vector<std::size_t> clique_order;
    std::vector<char> seen(h, 0);
    for (std::size_t root = 0; root < h; ++root) {
        if (seen[root]) continue;
        std::deque<std::size_t> queue{root};
        seen[root] = 1;
        while (!queue.empty()) {
            const std::size_t c = queue.front();
            queue.pop_front();
            clique_order.push_back(c);
            for (std::size_t n : nbrs[c])
                if (!seen[n]) {
                    seen[n] = 1;
                    queue.push_back(n);
                }
        }
    }

    std::vector<std::size_t> rank(p, p);
    std::size_t next = 0;
    for (std::size_t c : clique_order)
        for (Vertex v : tree.cliques[c])
            if (rank[v] == p) rank[v] = next++;

    for (auto [u, v] : und.edges()) {
        if (rank[u] < rank[v]) res.graph.add_arrowhead(v, u);
        else res.graph.add_arrowhead(u, v);
    }
    return res;
}

inline MixedGraph minimum_bidirected(const Pattern& pat) { return minimum_bidirected_ex(pat).graph; }

}  // namespace mvrcg
