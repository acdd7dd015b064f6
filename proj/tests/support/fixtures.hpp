#pragma once

#include <random>
#include <string>
#include <vector>

#include "mvrcg/mvrcg.hpp"
#include "support/oracles.hpp"

namespace fixtures {

using namespace mvrcg;

/// G1 -> D1 <-> D2 <- G2
inline MixedGraph gene_graph() {
    MixedGraph g({"G1", "G2", "D1", "D2"});
    g.add_directed(0, 2);
    g.add_directed(1, 3);
    g.add_bidirected(2, 3);
    return g;
}

inline MixedGraph chain_abc() {
    MixedGraph g({"a", "b", "c"});
    g.add_directed(0, 1);
    g.add_directed(1, 2);
    return g;
}

inline MixedGraph collider_abc() {
    MixedGraph g({"a", "b", "c"});
    g.add_directed(0, 1);
    g.add_directed(2, 1);
    return g;
}

inline UndirectedGraph ugraph(std::size_t p, std::initializer_list<std::pair<Vertex, Vertex>> edges) {
    UndirectedGraph g(p);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

inline VertexSet vs(std::initializer_list<Vertex> xs) { return VertexSet(xs); }

/// Mix of generator-built and block-built MVR chain graphs with at most
/// max_p vertices; `i` selects the case.
inline MixedGraph random_cg(std::size_t i, std::size_t max_p, std::uint64_t salt = 0) {
    std::mt19937_64 rng(1000003 * i + salt);
    const std::size_t p = 2 + std::uniform_int_distribution<std::size_t>(0, max_p - 2)(rng);
    if (i % 2 == 0) {
        std::uniform_real_distribution<double> dens(0.15, 0.7);
        return oracle::random_block_cg(p, dens(rng), dens(rng), rng);
    }
    SimConfig cfg;
    cfg.p = p;
    cfg.N = std::uniform_real_distribution<double>(1.0, 3.0)(rng);
    cfg.k = cfg.allowed_k()[std::uniform_int_distribution<std::size_t>(0, 4)(rng)];
    return random_mvr_cg(cfg, rng);
}

}  // namespace fixtures
