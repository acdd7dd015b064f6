#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mvrcg/ci_tests.hpp"
#include "mvrcg/graph_core.hpp"
#include "mvrcg/orientation.hpp"
#include "mvrcg/sepset.hpp"
#include "mvrcg/septree.hpp"
#include "mvrcg/undirected_graph.hpp"

namespace mvrcg {

enum class Variant { Essential, MinBidirected };

struct LearnOptions {
    /// Nodes larger than this get a warning and a capped conditioning-set size,
    /// since the local search is exponential in the node size.
    std::size_t dense_node_threshold = 20;
    /// Conditioning-set cap applied to nodes above the threshold.
    std::size_t dense_condition_cap = 3;
    /// Global cap on conditioning-set size; unlimited when empty.
    std::optional<std::size_t> max_condition_size;
};

struct LocalSkeletons {
    /// One graph per tree node, over all p vertices, with edges inside the node only.
    std::vector<UndirectedGraph> graphs;
    SepsetMap sepsets;
    std::vector<std::string> warnings;
};

/// For each node, starts complete and removes u - v on the first S within the
/// node (by size, then lexicographically) for which the tester reports
/// independence. The first node to remove a pair owns its sepset.
inline LocalSkeletons local_skeletons(const SeparationTree& t, const CITester& tester, double alpha,
                                      const LearnOptions& opt = {}) {
    const std::size_t p = tester.size();
    LocalSkeletons out;
    for (std::size_t h = 0; h < t.nodes.size(); ++h) {
        const VertexSet& node = t.nodes[h];
        if (!node.empty() && *node.rbegin() >= p) throw VertexMismatch("tree node contains a vertex outside the tester universe");
        UndirectedGraph g(p);
        g.make_complete(node);

        std::size_t cap = node.size();
        if (opt.max_condition_size) cap = std::min(cap, *opt.max_condition_size);
        if (node.size() > opt.dense_node_threshold) {
            cap = std::min(cap, opt.dense_condition_cap);
            out.warnings.push_back("tree node " + std::to_string(h) + " has " + std::to_string(node.size()) +
                                   " vertices (threshold " + std::to_string(opt.dense_node_threshold) +
                                   "); conditioning sets capped at size " + std::to_string(cap));
        }

        const std::vector<Vertex> members(node.begin(), node.end());
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                const Vertex u = members[i], v = members[j];
                std::vector<Vertex> pool;
                for (Vertex w : members)
                    if (w != u && w != v) pool.push_back(w);
                const std::size_t limit = std::min(cap, pool.size());
                for (std::size_t k = 0; k <= limit; ++k) {
                    const bool removed = for_each_subset_of_size(pool, k, [&](const VertexSet& s) {
                        if (!tester.test(u, v, s, alpha).independent) return false;
                        g.remove_edge(u, v);
                        out.sepsets.record(u, v, s);
                        return true;
                    });
                    if (removed) break;
                }
            }
        }
        out.graphs.push_back(std::move(g));
    }
    return out;
}

/// Union of the local edge sets minus every pair that some node containing
/// both endpoints has removed.
inline UndirectedGraph combine_skeletons(const std::vector<UndirectedGraph>& locals, const SeparationTree& t) {
    if (locals.size() != t.nodes.size()) throw VertexMismatch("one local skeleton per tree node required");
    const std::size_t p = locals.empty() ? 0 : locals.front().size();
    UndirectedGraph g(p);
    for (const auto& l : locals)
        for (auto [u, v] : l.edges()) g.add_edge(u, v);
    for (std::size_t h = 0; h < locals.size(); ++h) {
        const std::vector<Vertex> members(t.nodes[h].begin(), t.nodes[h].end());
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = i + 1; j < members.size(); ++j)
                if (!locals[h].adjacent(members[i], members[j])) g.remove_edge(members[i], members[j]);
    }
    return g;
}

struct LearnResult {
    /// Essential pattern, or the minimum-bidirected orientation of it.
    MixedGraph graph;
    Pattern pattern;
    UndirectedGraph skeleton;
    SepsetMap sepsets;
    SeparationTree tree;
    std::vector<std::string> warnings;
    std::size_t tests = 0;
};

namespace detail {

inline void finish_orientation(LearnResult& r, Variant variant) {
    r.pattern = apply_rules(orient_v_structures(r.skeleton, r.sepsets, r.pattern.names()));
    r.graph = r.pattern;
    if (variant == Variant::MinBidirected) {
        auto mb = minimum_bidirected_ex(r.pattern, {.triangulate_if_needed = true});
        if (mb.triangulated)
            r.warnings.push_back("undirected part of the learned pattern is not chordal; oriented along a triangulation");
        r.graph = std::move(mb.graph);
        if (!is_mvr_cg(r.graph)) r.warnings.push_back("learned graph contains a partially directed cycle");
    }
}

}  // namespace detail

/// Decomposition learner on a given separation tree.
inline LearnResult learn(const CITester& tester, const SeparationTree& tree, Variant variant, double alpha,
                         const LearnOptions& opt = {}) {
    CountingTester counted(tester);
    LearnResult r{MixedGraph(tester.names()), MixedGraph(tester.names()), UndirectedGraph(tester.size()), {}, tree, {}, 0};
    auto locals = local_skeletons(tree, counted, alpha, opt);
    r.skeleton = combine_skeletons(locals.graphs, tree);
    r.sepsets = std::move(locals.sepsets);
    r.warnings = std::move(locals.warnings);
    detail::finish_orientation(r, variant);
    r.tests = counted.calls();
    return r;
}

/// Decomposition learner with the tree built from the data's undirected
/// independence graph.
inline LearnResult learn(const CITester& tester, Variant variant, double alpha, const LearnOptions& opt = {}) {
    CountingTester counted(tester);
    const SeparationTree tree = tree_from_data(counted, alpha);
    const std::size_t uig_tests = counted.calls();
    LearnResult r = learn(tester, tree, variant, alpha, opt);
    r.tests += uig_tests;
    return r;
}

}  // namespace mvrcg
