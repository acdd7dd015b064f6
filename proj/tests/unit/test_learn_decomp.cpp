#include <gtest/gtest.h>

#include <algorithm>
#include <mutex>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace mvrcg;
using fixtures::gene_graph;
using fixtures::vs;

namespace {

enum : Vertex { G1, G2, D1, D2 };

// Records every (u, v, S) it is asked about.
class RecordingTester final : public CITester {
public:
    explicit RecordingTester(const CITester& inner) : inner_(inner) {}
    TestResult test(Vertex u, Vertex v, const VertexSet& s, double alpha) const override {
        std::lock_guard lock(mu_);
        pairs_.insert(make_pair_key(u, v));
        max_size_ = std::max(max_size_, s.size());
        return inner_.test(u, v, s, alpha);
    }
    const std::vector<std::string>& names() const override { return inner_.names(); }
    std::set<VertexPair> pairs() const { return pairs_; }
    std::size_t max_size() const { return max_size_; }

private:
    const CITester& inner_;
    mutable std::mutex mu_;
    mutable std::set<VertexPair> pairs_;
    mutable std::size_t max_size_ = 0;
};

class AlwaysDependent final : public CITester {
public:
    explicit AlwaysDependent(std::size_t p) : names_(MixedGraph::with_default_names(p).names()) {}
    TestResult test(Vertex, Vertex, const VertexSet&, double) const override { return {false, 0.0, 0.0}; }
    const std::vector<std::string>& names() const override { return names_; }

private:
    std::vector<std::string> names_;
};

Pattern pattern_from(const std::string& text) { return read_graph_string("# mvr-graph v1\n" + text); }

SeparationTree single_node(std::size_t p) {
    SeparationTree t;
    t.nodes = {range_set(p)};
    return t;
}

}  // namespace

TEST(LocalSkeletons, GeneGraphSingleNode) {
    const OracleTester o(gene_graph());
    const auto ls = local_skeletons(single_node(4), o, 0.0);
    ASSERT_EQ(ls.graphs.size(), 1u);
    EXPECT_EQ(ls.graphs[0], fixtures::ugraph(4, {{G1, D1}, {G2, D2}, {D1, D2}}));
    ASSERT_NE(ls.sepsets.find(G1, G2), nullptr);
    EXPECT_EQ(*ls.sepsets.find(G1, G2), VertexSet{});
    EXPECT_EQ(*ls.sepsets.find(G1, D2), VertexSet{});
    EXPECT_EQ(*ls.sepsets.find(G2, D1), VertexSet{});
    EXPECT_EQ(ls.sepsets.size(), 3u);
}

TEST(LocalSkeletons, EdgelessTruthRemovesEverything) {
    const OracleTester o(MixedGraph::with_default_names(4));
    const auto ls = local_skeletons(single_node(4), o, 0.0);
    EXPECT_EQ(ls.graphs[0].edge_count(), 0u);
    EXPECT_EQ(ls.sepsets.size(), 6u);
    for (const auto& [pair, s] : ls.sepsets) EXPECT_TRUE(s.empty());
}

TEST(LocalSkeletons, PairsOutsideNodesAreNeverTested) {
    const OracleTester o(fixtures::chain_abc());
    const RecordingTester rec(o);
    SeparationTree t;
    t.nodes = {vs({0, 1}), vs({1, 2})};
    t.edges = {{0, 1, vs({1})}};
    const auto ls = local_skeletons(t, rec, 0.0);
    EXPECT_EQ(ls.graphs[0], fixtures::ugraph(3, {{0, 1}}));
    EXPECT_EQ(ls.graphs[1], fixtures::ugraph(3, {{1, 2}}));
    EXPECT_EQ(rec.pairs().count({0, 2}), 0u);
}

TEST(LocalSkeletons, SmallestThenLexicographicSepsetWins) {
    // a -> b -> d, a -> c -> d: a and d are separated by {b, c} only
    MixedGraph g({"a", "b", "c", "d", "e"});
    g.add_directed(0, 1);
    g.add_directed(0, 2);
    g.add_directed(1, 3);
    g.add_directed(2, 3);
    g.add_directed(4, 3);
    const auto ls = local_skeletons(single_node(5), OracleTester(g), 0.0);
    EXPECT_EQ(*ls.sepsets.find(0, 4), VertexSet{});  // a, e marginally independent
    // b and c: {a} is the first separating set in size-then-lexicographic order
    EXPECT_EQ(*ls.sepsets.find(1, 2), vs({0}));
}

TEST(LocalSkeletons, DenseNodeIsCappedWithWarning) {
    const AlwaysDependent dep(22);
    const RecordingTester rec(dep);
    const auto ls = local_skeletons(single_node(22), rec, 0.01);
    ASSERT_EQ(ls.warnings.size(), 1u);
    EXPECT_NE(ls.warnings[0].find("22 vertices"), std::string::npos);
    EXPECT_EQ(rec.max_size(), LearnOptions{}.dense_condition_cap);
    EXPECT_EQ(ls.graphs[0], UndirectedGraph::complete(22));

    LearnOptions strict;
    strict.max_condition_size = 1;
    const RecordingTester rec2(dep);
    const auto small = local_skeletons(single_node(6), rec2, 0.01, strict);
    EXPECT_TRUE(small.warnings.empty());
    EXPECT_EQ(rec2.max_size(), 1u);
}

TEST(CombineSkeletons, RemovalInAnyNodeWins) {
    SeparationTree t;
    t.nodes = {vs({0, 1, 2}), vs({1, 2, 3})};
    t.edges = {{0, 1, vs({1, 2})}};
    UndirectedGraph l0(4), l1(4);
    l0.add_edge(0, 1);
    l0.add_edge(1, 2);
    l1.add_edge(2, 3);  // 1 - 2 removed here
    l1.add_edge(1, 3);
    const auto g = combine_skeletons({l0, l1}, t);
    EXPECT_FALSE(g.adjacent(1, 2));
    EXPECT_TRUE(g.adjacent(0, 1));
    EXPECT_TRUE(g.adjacent(2, 3));
    EXPECT_TRUE(g.adjacent(1, 3));
    EXPECT_THROW(combine_skeletons({l0}, t), VertexMismatch);
}

TEST(OrientVStructures, Examples) {
    const OracleTester o(gene_graph());
    const auto ls = local_skeletons(single_node(4), o, 0.0);
    const auto pat = orient_v_structures(ls.graphs[0], ls.sepsets, o.names());
    EXPECT_EQ(pat, gene_graph());

    const auto complete = orient_v_structures(UndirectedGraph::complete(3), {}, {"a", "b", "c"});
    for (auto [u, v] : complete.edge_pairs()) EXPECT_TRUE(complete.is_undirected(u, v));

    SepsetMap s;
    s.record(0, 2, {});
    const auto col = orient_v_structures(fixtures::ugraph(3, {{0, 1}, {1, 2}}), s, {"a", "b", "c"});
    EXPECT_EQ(col, fixtures::collider_abc());

    SepsetMap s2;
    s2.record(0, 2, {1});
    const auto none = orient_v_structures(fixtures::ugraph(3, {{0, 1}, {1, 2}}), s2, {"a", "b", "c"});
    EXPECT_TRUE(none.is_undirected(0, 1));
    EXPECT_TRUE(none.is_undirected(1, 2));
}

TEST(ApplyRules, R1) {
    const auto out = apply_rules(pattern_from("nodes: a b c\na -> b\nb -- c\n"));
    EXPECT_TRUE(out.is_directed(1, 2));
    const auto bi = apply_rules(pattern_from("nodes: a b c\na <-> b\nb -- c\n"));
    EXPECT_TRUE(bi.is_directed(1, 2));
}

TEST(ApplyRules, R2) {
    const auto out = apply_rules(pattern_from("nodes: a b c\na -> b\nb -> c\na -- c\n"));
    EXPECT_TRUE(out.is_directed(0, 2));
    const auto bi = apply_rules(pattern_from("nodes: a b c\na <-> b\nb -> c\na -- c\n"));
    EXPECT_TRUE(bi.is_directed(0, 2));
}

TEST(ApplyRules, R3) {
    // a - m1, a - m2, m1 -> b <- m2, a - b, m1 and m2 non-adjacent
    const auto out = apply_rules(pattern_from("nodes: a m1 m2 b\na -- m1\na -- m2\nm1 -> b\nm2 -> b\na -- b\n"));
    EXPECT_TRUE(out.is_directed(0, 3));
    EXPECT_TRUE(out.is_undirected(0, 1));
    EXPECT_TRUE(out.is_undirected(0, 2));
}

TEST(ApplyRules, FixedPointWhenNothingApplies) {
    const auto p = pattern_from("nodes: a b c\na -- b\nb -- c\n");
    EXPECT_EQ(apply_rules(p), p);
    EXPECT_EQ(apply_rules(gene_graph()), gene_graph());
}

TEST(ApplyRules, MonotoneAndOrderIndependent) {
    std::array<Rule, 3> order{Rule::R1, Rule::R2, Rule::R3};
    std::vector<std::array<Rule, 3>> orders;
    std::sort(order.begin(), order.end());
    do orders.push_back(order);
    while (std::next_permutation(order.begin(), order.end()));

    for (std::size_t i = 0; i < 200; ++i) {
        const MixedGraph g = fixtures::random_cg(i, 8, 43);
        const OracleTester o(g);
        const auto tree = tree_from_data(o, 0.0);
        const auto ls = local_skeletons(tree, o, 0.0);
        const Pattern start = orient_v_structures(combine_skeletons(ls.graphs, tree), ls.sepsets, g.names());
        const auto reference = apply_rules(start);
        const auto before = oracle::arrowheads(start);
        const auto after = oracle::arrowheads(reference);
        ASSERT_TRUE(std::includes(after.begin(), after.end(), before.begin(), before.end()));
        for (const auto& ord : orders) ASSERT_EQ(apply_rules(start, ord), reference) << graph_to_string(start);
    }
}

TEST(ApplyRules, OracleArrowheadsAreSharedByAllEquivalentGraphs) {
    std::size_t complete_cases = 0, total = 0;
    for (std::size_t i = 0; i < 120; ++i) {
        const MixedGraph g = fixtures::random_cg(i, 6, 47);
        const auto pattern = learn(OracleTester(g), Variant::Essential, 0.0).pattern;
        const auto family = oracle::markov_equivalents(g);
        ASSERT_FALSE(family.empty());
        const auto shared = oracle::shared_arrowheads(family);
        const auto found = oracle::arrowheads(pattern);
        ASSERT_TRUE(std::includes(shared.begin(), shared.end(), found.begin(), found.end())) << graph_to_string(g);
        ++total;
        if (shared == found) ++complete_cases;
    }
    EXPECT_EQ(complete_cases, total);
}

TEST(MinimumBidirected, UndirectedTriangle) {
    const auto out = minimum_bidirected(pattern_from("nodes: a b c\na -- b\nb -- c\na -- c\n"));
    EXPECT_TRUE(out.is_directed(0, 1));
    EXPECT_TRUE(out.is_directed(0, 2));
    EXPECT_TRUE(out.is_directed(1, 2));
}

TEST(MinimumBidirected, NoUndirectedEdgesUnchanged) {
    EXPECT_EQ(minimum_bidirected(gene_graph()), gene_graph());
}

TEST(MinimumBidirected, RejectsNonChordalUnlessAsked) {
    const auto cyc = pattern_from("nodes: a b c d\na -- b\nb -- c\nc -- d\nd -- a\n");
    EXPECT_THROW(minimum_bidirected(cyc), NotChordal);
    const auto r = minimum_bidirected_ex(cyc, {.triangulate_if_needed = true});
    EXPECT_TRUE(r.triangulated);
    EXPECT_TRUE(is_mvr_cg(r.graph));
}

TEST(Learn, GeneGraphAndChain) {
    EXPECT_EQ(learn(OracleTester(gene_graph()), Variant::Essential, 0.0).graph, gene_graph());

    const auto ess = learn(OracleTester(fixtures::chain_abc()), Variant::Essential, 0.0);
    EXPECT_TRUE(ess.graph.is_undirected(0, 1));
    EXPECT_TRUE(ess.graph.is_undirected(1, 2));
    EXPECT_FALSE(ess.graph.has_edge(0, 2));
    EXPECT_EQ(ess.sepsets.find(0, 2), nullptr);  // a and c never share a tree node

    const auto mb = learn(OracleTester(fixtures::chain_abc()), Variant::MinBidirected, 0.0);
    EXPECT_TRUE(is_mvr_cg(mb.graph));
    EXPECT_TRUE(v_structures(mb.graph).empty());
    EXPECT_EQ(skeleton(mb.graph), skeleton(fixtures::chain_abc()));
    EXPECT_TRUE(mb.graph.is_directed(0, 1));
    EXPECT_TRUE(mb.graph.is_directed(1, 2));
}

TEST(Learn, OracleRecoversSkeletonAndVStructures) {
    for (std::size_t i = 0; i < 150; ++i) {
        const MixedGraph g = fixtures::random_cg(i, 8, 53);
        const auto r = learn(OracleTester(g), Variant::Essential, 0.0);
        ASSERT_EQ(r.skeleton, skeleton(g)) << graph_to_string(g);
        ASSERT_EQ(v_structures(r.graph), v_structures(g)) << graph_to_string(g);
        ASSERT_TRUE(r.warnings.empty());
        for (const auto& [pair, s] : r.sepsets) ASSERT_FALSE(r.graph.has_edge(pair.first, pair.second));

        const auto mb = learn(OracleTester(g), Variant::MinBidirected, 0.0);
        ASSERT_TRUE(is_mvr_cg(mb.graph)) << graph_to_string(g);
        ASSERT_EQ(skeleton(mb.graph), skeleton(g));
        ASSERT_EQ(v_structures(mb.graph), v_structures(g)) << graph_to_string(g) << graph_to_string(mb.graph);
    }
}

TEST(Learn, HypergraphTreeGivesSameResult) {
    for (std::size_t i = 0; i < 60; ++i) {
        const MixedGraph g = fixtures::random_cg(i, 8, 59);
        const OracleTester o(g);
        const auto via_hyper = learn(o, tree_from_hypergraph(component_hypergraph(g)).tree, Variant::Essential, 0.0);
        ASSERT_EQ(via_hyper.graph, learn(o, Variant::Essential, 0.0).graph) << graph_to_string(g);
    }
}

TEST(MinimumBidirected, MinimalAmongEquivalentGraphs) {
    for (std::size_t i = 0; i < 40; ++i) {
        const MixedGraph g = fixtures::random_cg(i, 6, 61);
        const auto out = learn(OracleTester(g), Variant::MinBidirected, 0.0).graph;
        ASSERT_TRUE(oracle::is_mvr_cg_bruteforce(out)) << graph_to_string(out);
        std::size_t best = g.edge_count() + 1;
        for (const auto& m : oracle::markov_equivalents(g)) best = std::min(best, oracle::bidirected_count(m));
        ASSERT_EQ(oracle::bidirected_count(out), best) << graph_to_string(g);
    }
}
