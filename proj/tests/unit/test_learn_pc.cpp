#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "support/fixtures.hpp"

using namespace mvrcg;
using fixtures::gene_graph;
using fixtures::vs;

namespace {

enum : Vertex { G1, G2, D1, D2 };

class AlwaysDependent final : public CITester {
public:
    explicit AlwaysDependent(std::size_t p) : names_(MixedGraph::with_default_names(p).names()) {}
    TestResult test(Vertex, Vertex, const VertexSet&, double) const override { return {false, 0.0, 0.0}; }
    const std::vector<std::string>& names() const override { return names_; }

private:
    std::vector<std::string> names_;
};

// Vertex v of g becomes perm[v] of the result.
MixedGraph permuted(const MixedGraph& g, const std::vector<Vertex>& perm) {
    std::vector<std::string> names(g.size());
    for (Vertex v = 0; v < g.size(); ++v) names[perm[v]] = g.name(v);
    MixedGraph out(names);
    for (auto [u, v] : g.edge_pairs()) {
        if (g.is_directed(u, v)) out.add_directed(perm[u], perm[v]);
        else if (g.is_directed(v, u)) out.add_directed(perm[v], perm[u]);
        else if (g.is_bidirected(u, v)) out.add_bidirected(perm[u], perm[v]);
        else out.add_undirected(perm[u], perm[v]);
    }
    return out;
}

UndirectedGraph permuted(const UndirectedGraph& g, const std::vector<Vertex>& perm) {
    UndirectedGraph out(g.size());
    for (auto [u, v] : g.edges()) out.add_edge(perm[u], perm[v]);
    return out;
}

}  // namespace

TEST(PcSkeleton, Examples) {
    const auto gene = pc_skeleton(OracleTester(gene_graph()), 0.0);
    EXPECT_EQ(gene.graph, skeleton(gene_graph()));
    ASSERT_NE(gene.sepsets.find(G1, G2), nullptr);
    EXPECT_EQ(*gene.sepsets.find(G1, G2), VertexSet{});

    EXPECT_EQ(pc_skeleton(AlwaysDependent(5), 0.01).graph, UndirectedGraph::complete(5));

    const auto chain = pc_skeleton(OracleTester(fixtures::chain_abc()), 0.0);
    EXPECT_EQ(chain.graph, fixtures::ugraph(3, {{0, 1}, {1, 2}}));
    ASSERT_NE(chain.sepsets.find(0, 2), nullptr);
    EXPECT_EQ(*chain.sepsets.find(0, 2), vs({1}));
}

TEST(PcSkeleton, LevelCap) {
    PcOptions opt;
    opt.max_condition_size = 0;
    const auto chain = pc_skeleton(OracleTester(fixtures::chain_abc()), 0.0, opt);
    EXPECT_EQ(chain.graph, UndirectedGraph::complete(3));
}

TEST(PcLearn, MirrorsDecompositionExamples) {
    EXPECT_EQ(pc_learn(OracleTester(gene_graph()), Variant::Essential, 0.0).graph, gene_graph());
    const auto ess = pc_learn(OracleTester(fixtures::chain_abc()), Variant::Essential, 0.0);
    EXPECT_TRUE(ess.graph.is_undirected(0, 1));
    EXPECT_TRUE(ess.graph.is_undirected(1, 2));
    const auto mb = pc_learn(OracleTester(fixtures::chain_abc()), Variant::MinBidirected, 0.0);
    EXPECT_TRUE(is_mvr_cg(mb.graph));
    EXPECT_TRUE(v_structures(mb.graph).empty());
    EXPECT_GT(mb.tests, 0u);
}

TEST(PcLearn, AgreesWithDecompositionUnderOracle) {
    for (std::size_t i = 0; i < 150; ++i) {
        const MixedGraph g = fixtures::random_cg(i, 8, 71);
        const OracleTester o(g);
        const auto pc = pc_learn(o, Variant::Essential, 0.0);
        const auto dc = learn(o, Variant::Essential, 0.0);
        ASSERT_EQ(pc.graph, dc.graph) << graph_to_string(g);
        ASSERT_EQ(pc_learn(o, Variant::MinBidirected, 0.0).graph, learn(o, Variant::MinBidirected, 0.0).graph)
            << graph_to_string(g);
    }
}

TEST(PcSkeleton, OracleResultIndependentOfVertexOrder) {
    std::mt19937_64 rng(73);
    for (std::size_t i = 0; i < 100; ++i) {
        const MixedGraph g = fixtures::random_cg(i, 8, 79);
        const auto base = pc_skeleton(OracleTester(g), 0.0).graph;
        std::vector<Vertex> perm(g.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const auto shuffled = pc_skeleton(OracleTester(permuted(g, perm)), 0.0).graph;
        ASSERT_EQ(shuffled, permuted(base, perm)) << graph_to_string(g);
        PcOptions stable;
        stable.stable = true;
        ASSERT_EQ(pc_skeleton(OracleTester(g), 0.0, stable).graph, base);
    }
}
