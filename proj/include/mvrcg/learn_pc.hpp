#pragma once

#include <optional>
#include <vector>

#include "mvrcg/ci_tests.hpp"
#include "mvrcg/learn_decomp.hpp"
#include "mvrcg/orientation.hpp"
#include "mvrcg/sepset.hpp"
#include "mvrcg/undirected_graph.hpp"

namespace mvrcg {

struct PcOptions {
    /// Level-wise cap on conditioning-set size; unlimited when empty.
    std::optional<std::size_t> max_condition_size;
    /// Test each level against a snapshot of the adjacencies taken at the start
    /// of the level (order independent). Off: adjacencies shrink as edges go.
    bool stable = false;
};

struct PcSkeleton {
    UndirectedGraph graph;
    SepsetMap sepsets;
};

/// Level-wise adjacency search. At level l, each ordered adjacent pair (u, v)
/// is tested against every size-l subset of adj(u) \ {v}, lexicographically;
/// the edge goes on the first independence.
inline PcSkeleton pc_skeleton(const CITester& tester, double alpha, const PcOptions& opt = {}) {
    const std::size_t p = tester.size();
    PcSkeleton out{UndirectedGraph::complete(p), {}};
    for (std::size_t level = 0;; ++level) {
        if (opt.max_condition_size && level > *opt.max_condition_size) break;
        const UndirectedGraph snapshot = out.graph;
        bool any_large_enough = false;
        for (Vertex u = 0; u < p; ++u) {
            for (Vertex v : VertexSet(out.graph.neighbors(u))) {
                if (!out.graph.adjacent(u, v)) continue;
                const UndirectedGraph& adj = opt.stable ? snapshot : out.graph;
                std::vector<Vertex> pool;
                for (Vertex w : adj.neighbors(u))
                    if (w != v) pool.push_back(w);
                if (pool.size() < level) continue;
                any_large_enough = true;
                for_each_subset_of_size(pool, level, [&](const VertexSet& s) {
                    if (!tester.test(u, v, s, alpha).independent) return false;
                    out.graph.remove_edge(u, v);
                    out.sepsets.record(u, v, s);
                    return true;
                });
            }
        }
        if (!any_large_enough) break;
    }
    return out;
}

/// PC-like baseline: global skeleton, then the same orientation steps as the
/// decomposition learner. The result's tree is left empty.
inline LearnResult pc_learn(const CITester& tester, Variant variant, double alpha, const PcOptions& opt = {}) {
    CountingTester counted(tester);
    auto sk = pc_skeleton(counted, alpha, opt);
    LearnResult r{MixedGraph(tester.names()), MixedGraph(tester.names()), std::move(sk.graph), std::move(sk.sepsets), {}, {}, 0};
    detail::finish_orientation(r, variant);
    r.tests = counted.calls();
    return r;
}

}  // namespace mvrcg
