#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support/fixtures.hpp"

using namespace mvrcg;
using fixtures::gene_graph;
using fixtures::vs;

namespace {

enum : Vertex { G1, G2, D1, D2 };

GaussianStats identity_stats(std::size_t p, std::size_t n) {
    GaussianStats s;
    s.n = n;
    s.cov = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
    for (std::size_t i = 0; i < p; ++i) s.names.push_back("V" + std::to_string(i));
    return s;
}

DiscreteData two_columns(std::vector<int> a, std::vector<int> b, int arity = 2) {
    DiscreteData d;
    d.columns = {std::move(a), std::move(b)};
    d.arities = {arity, arity};
    d.names = {"a", "b"};
    return d;
}

// Partial correlation from the inverse of the {u, v} u S covariance block.
double partial_corr_by_inverse(const Eigen::MatrixXd& cov, Vertex u, Vertex v, const VertexSet& s) {
    std::vector<Vertex> idx{u, v};
    idx.insert(idx.end(), s.begin(), s.end());
    const auto k = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd sub(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) sub(i, j) = cov(idx[i], idx[j]);
    const Eigen::MatrixXd prec = sub.inverse();
    return -prec(0, 1) / std::sqrt(prec(0, 0) * prec(1, 1));
}

}  // namespace

TEST(GaussianCi, UncorrelatedPairIsIndependent) {
    const auto s = identity_stats(3, 100);
    const auto r = gaussian_ci(s, 0, 1, {}, 0.05);
    EXPECT_DOUBLE_EQ(r.statistic, 0.0);
    EXPECT_DOUBLE_EQ(r.p_value, 1.0);
    EXPECT_TRUE(r.independent);
    EXPECT_TRUE(gaussian_ci(s, 0, 1, {2}, 0.05).independent);
}

TEST(GaussianCi, CollinearPairIsDependent) {
    GaussianStats s = identity_stats(2, 500);
    s.cov << 1.0, 1.0, 1.0, 1.0;
    const auto r = gaussian_ci(s, 0, 1, {}, 0.01);
    EXPECT_FALSE(r.independent);
    EXPECT_LT(r.p_value, 1e-12);
}

TEST(GaussianCi, MatchesInversePartialCorrelation) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> z(0.0, 1.0);
    Eigen::MatrixXd data(400, 5);
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
        const double a = z(rng), b = z(rng);
        data(i, 0) = a;
        data(i, 1) = a + 0.5 * b + z(rng);
        data(i, 2) = b + z(rng);
        data(i, 3) = data(i, 1) - data(i, 2) + z(rng);
        data(i, 4) = z(rng);
    }
    const auto stats = GaussianStats::from_samples(data, {"a", "b", "c", "d", "e"});
    for (const VertexSet& s : {vs({}), vs({2}), vs({1, 2}), vs({1, 2, 4})}) {
        const double r = partial_corr_by_inverse(stats.cov, 0, 3, s);
        const double n = static_cast<double>(stats.n - s.size() - 3);
        const double expected = std::sqrt(n) * std::atanh(r);
        const auto res = gaussian_ci(stats, 0, 3, s, 0.05);
        EXPECT_NEAR(res.statistic, expected, 1e-9);
        EXPECT_NEAR(res.p_value, std::erfc(std::abs(expected) / std::sqrt(2.0)), 1e-9);
        EXPECT_EQ(res.independent, res.p_value > 0.05);
    }
}

TEST(GaussianCi, SymmetricInArguments) {
    std::mt19937_64 rng(2);
    for (std::size_t i = 0; i < 25; ++i) {
        const MixedGraph g = fixtures::random_cg(i, 7);
        if (g.size() < 3) continue;
        const auto sample = sample_gaussian(g, 200, rng);
        for (Vertex u = 0; u < g.size(); ++u)
            for (Vertex v = u + 1; v < g.size(); ++v) {
                VertexSet s;
                for (Vertex w = 0; w < g.size(); ++w)
                    if (w != u && w != v && (w + i) % 2 == 0) s.insert(w);
                const auto a = gaussian_ci(sample.stats, u, v, s, 0.01);
                const auto b = gaussian_ci(sample.stats, v, u, s, 0.01);
                ASSERT_EQ(a.statistic, b.statistic);
                ASSERT_EQ(a.p_value, b.p_value);
                ASSERT_GE(a.p_value, 0.0);
                ASSERT_LE(a.p_value, 1.0);
            }
    }
}

TEST(GaussianCi, Errors) {
    const auto s = identity_stats(4, 5);
    EXPECT_THROW(gaussian_ci(s, 0, 1, {2, 3}, 0.05), InsufficientSamples);
    EXPECT_NO_THROW(gaussian_ci(s, 0, 1, {2}, 0.05));
    EXPECT_THROW(gaussian_ci(s, 0, 1, {1}, 0.05), OverlappingSets);
    EXPECT_THROW(gaussian_ci(s, 0, 0, {}, 0.05), Error);

    GaussianStats d = identity_stats(3, 100);
    d.cov(2, 2) = 0.0;
    EXPECT_THROW(gaussian_ci(d, 0, 1, {2}, 0.05), DegenerateCovariance);
    GaussianStats twin = identity_stats(4, 100);
    twin.cov(2, 3) = twin.cov(3, 2) = 1.0;
    EXPECT_THROW(gaussian_ci(twin, 0, 1, {2, 3}, 0.05), DegenerateCovariance);
}

TEST(GaussianCi, GeneGraphSamplesMatchOracleInMostSeeds) {
    int marginal_indep = 0, conditional_dep = 0;
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Rng rng(seed);
        const auto sample = sample_gaussian(gene_graph(), 10000, rng);
        if (gaussian_ci(sample.stats, G1, G2, {}, 0.01).independent) ++marginal_indep;
        if (!gaussian_ci(sample.stats, G1, G2, {D1, D2}, 0.01).independent) ++conditional_dep;
    }
    EXPECT_GT(marginal_indep, 12);
    EXPECT_GT(conditional_dep, 12);
}

TEST(DiscreteCi, IdenticalColumnsAreDependent) {
    std::mt19937_64 rng(4);
    std::vector<int> a(1000);
    for (int& x : a) x = static_cast<int>(rng() % 2);
    const auto r = discrete_ci(two_columns(a, a), 0, 1, {}, 0.01);
    EXPECT_FALSE(r.independent);
    EXPECT_LT(r.p_value, 1e-12);
}

TEST(DiscreteCi, IndependentUniformColumnsMostlyPass) {
    int passes = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        std::mt19937_64 rng(seed);
        std::vector<int> a(10000), b(10000);
        for (int& x : a) x = static_cast<int>(rng() % 3);
        for (int& x : b) x = static_cast<int>(rng() % 3);
        const auto r = discrete_ci(two_columns(a, b, 3), 0, 1, {}, 0.01);
        ASSERT_GE(r.p_value, 0.0);
        ASSERT_LE(r.p_value, 1.0);
        if (r.independent) ++passes;
    }
    EXPECT_GE(passes, 95);
}

TEST(DiscreteCi, StatisticMatchesHandComputation) {
    // 2x2 table [[30, 10], [10, 30]]
    std::vector<int> a, b;
    auto add = [&](int x, int y, int times) {
        for (int i = 0; i < times; ++i) {
            a.push_back(x);
            b.push_back(y);
        }
    };
    add(0, 0, 30);
    add(0, 1, 10);
    add(1, 0, 10);
    add(1, 1, 30);
    const double g2 = 2.0 * (2 * 30 * std::log(30.0 / 20.0) + 2 * 10 * std::log(10.0 / 20.0));
    const auto r = discrete_ci(two_columns(a, b), 0, 1, {}, 0.05);
    EXPECT_NEAR(r.statistic, g2, 1e-9);
    // chi-square with one degree of freedom: p = erfc(sqrt(g2 / 2))
    EXPECT_NEAR(r.p_value, std::erfc(std::sqrt(g2 / 2.0)), 1e-9);
}

TEST(DiscreteCi, LowSampleRuleDeclaresIndependence) {
    std::vector<int> a{0, 1, 0, 1, 0, 1, 0, 1, 0};
    const auto r = discrete_ci(two_columns(a, a), 0, 1, {}, 0.05);  // n = 9 < 10 * 1
    EXPECT_TRUE(r.independent);
    EXPECT_DOUBLE_EQ(r.p_value, 1.0);
}

TEST(DiscreteData, ValidateRejectsOutOfRange) {
    auto d = two_columns({0, 1, 2}, {0, 1, 1});
    EXPECT_THROW(d.validate(), Error);
    EXPECT_THROW(DiscreteTester{d}, Error);
}

TEST(OracleCi, GeneGraph) {
    const MixedGraph g = gene_graph();
    EXPECT_TRUE(oracle_ci(g, G1, G2, {}).independent);
    EXPECT_FALSE(oracle_ci(g, G1, D1, {}).independent);
    EXPECT_FALSE(oracle_ci(g, G1, D1, {G2, D2}).independent);
    EXPECT_FALSE(oracle_ci(g, G1, G2, {D1, D2}).independent);
    EXPECT_DOUBLE_EQ(oracle_ci(g, G1, G2, {}).p_value, 1.0);
    MixedGraph bad({"a", "b"});
    bad.add_undirected(0, 1);
    EXPECT_THROW(OracleTester{bad}, NotChainGraph);
}

TEST(OracleCi, AgreesWithChainEnumeration) {
    for (std::size_t i = 0; i < 100; ++i) {
        const MixedGraph g = fixtures::random_cg(i, 6, 17);
        const OracleTester t(g);
        const std::size_t p = g.size();
        for (Vertex u = 0; u < p; ++u)
            for (Vertex v = u + 1; v < p; ++v)
                for (std::size_t mask = 0; mask < (std::size_t{1} << p); ++mask) {
                    if (mask >> u & 1 || mask >> v & 1) continue;
                    VertexSet s;
                    for (Vertex w = 0; w < p; ++w)
                        if (mask >> w & 1) s.insert(w);
                    ASSERT_EQ(t.test(u, v, s, 0.0).independent, m_separated_bruteforce(g, {u}, {v}, s));
                }
    }
}

TEST(Uig, OracleExamples) {
    EXPECT_EQ(uig_from_data(OracleTester(gene_graph()), 0.0), UndirectedGraph::complete(4));
    EXPECT_EQ(uig_from_data(OracleTester(MixedGraph::with_default_names(4)), 0.0), UndirectedGraph(4));
}

TEST(Uig, OracleEqualsAugmentedGraph) {
    for (std::size_t i = 0; i < 150; ++i) {
        const MixedGraph g = fixtures::random_cg(i, 8, 23);
        ASSERT_EQ(uig_from_data(OracleTester(g), 0.0), augmented_graph(g)) << graph_to_string(g);
    }
}

TEST(Uig, GaussianChainDropsEndpoints) {
    int correct = 0;
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        Rng rng(seed);
        const auto sample = sample_gaussian(fixtures::chain_abc(), 10000, rng);
        if (uig_from_data(GaussianTester(sample.stats), 0.01) == fixtures::ugraph(3, {{0, 1}, {1, 2}})) ++correct;
    }
    EXPECT_GT(correct, 7);
}

TEST(CountingTester, CountsCalls) {
    const OracleTester o(gene_graph());
    const CountingTester c(o);
    uig_from_data(c, 0.0);
    EXPECT_EQ(c.calls(), 6u);
}
