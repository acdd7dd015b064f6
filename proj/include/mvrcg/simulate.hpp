#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mvrcg/ci_tests.hpp"
#include "mvrcg/errors.hpp"
#include "mvrcg/graph_core.hpp"
#include "mvrcg/graph_io.hpp"
#include "mvrcg/mixed_graph.hpp"

namespace mvrcg {

using Rng = std::mt19937_64;

inline constexpr std::size_t kMaxGraphAttempts = 1000;

struct SimConfig {
    std::size_t p = 10;
    /// Expected number of neighbours per vertex in the generating DAG.
    double N = 2.0;
    /// Fraction of extra latent vertices, one of 0.1 .. 0.5.
    double k = 0.1;
    std::size_t n = 1000;
    std::uint64_t seed = 0;

    std::size_t latent_count() const { return static_cast<std::size_t>(std::llround(k * static_cast<double>(p))); }

    /// Latent fractions allowed for this p.
    std::vector<double> allowed_k() const {
        if (p == 40 || p == 50) return {0.1, 0.2};
        return {0.1, 0.2, 0.3, 0.4, 0.5};
    }

    void validate() const {
        if (p < 2) throw Error("simulation needs p >= 2");
        if (!(N >= 1.0)) throw Error("simulation needs N >= 1");
        const auto ks = allowed_k();
        if (std::none_of(ks.begin(), ks.end(), [&](double c) { return std::abs(c - k) < 1e-9; })) {
            std::string list;
            for (double c : ks) list += (list.empty() ? "" : ", ") + std::to_string(c).substr(0, 3);
            throw Error("latent fraction k must be one of {" + list + "} for p = " + std::to_string(p));
        }
    }
};

/// Erdos-Renyi DAG on q vertices named X1..Xq: each pair is joined with
/// probability N / (q - 1) and oriented along a random permutation.
inline MixedGraph random_dag(std::size_t q, double N, Rng& rng) {
    MixedGraph g = MixedGraph::with_default_names(q);
    if (q < 2) return g;
    std::vector<Vertex> perm(q);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const double prob = std::min(1.0, N / static_cast<double>(q - 1));
    std::bernoulli_distribution edge(prob);
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = i + 1; j < q; ++j)
            if (edge(rng)) g.add_directed(perm[i], perm[j]);
    return g;
}

/// Random MVR chain graph over X1..Xp: a random DAG on p + round(k p)
/// vertices with a uniformly chosen latent subset projected out. Projections
/// that are not MVR chain graphs, or that put both a directed edge and a
/// latent trek on one pair, are redrawn.
inline MixedGraph random_mvr_cg(const SimConfig& cfg, Rng& rng) {
    cfg.validate();
    const std::size_t latents = cfg.latent_count();
    const std::size_t q = cfg.p + latents;
    for (std::size_t attempt = 0; attempt < kMaxGraphAttempts; ++attempt) {
        MixedGraph dag = random_dag(q, cfg.N, rng);
        std::vector<Vertex> all(q);
        std::iota(all.begin(), all.end(), 0);
        std::shuffle(all.begin(), all.end(), rng);
        const VertexSet hidden(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(latents));
        Projection proj = latent_project(dag, hidden);
        if (!proj.clean() || !is_mvr_cg(proj.graph)) continue;
        MixedGraph out = MixedGraph::with_default_names(cfg.p);
        for (auto [u, v] : proj.graph.edge_pairs()) out.add_edge(u, v, proj.graph.mark(u, v), proj.graph.mark(v, u));
        return out;
    }
    throw RetryExhausted("no MVR chain graph after " + std::to_string(kMaxGraphAttempts) + " attempts");
}

inline MixedGraph random_mvr_cg(const SimConfig& cfg) {
    Rng rng(cfg.seed);
    return random_mvr_cg(cfg, rng);
}

struct GaussianSample {
    Eigen::MatrixXd data;  // n x p, observed columns only
    GaussianStats stats;
};

struct SemOptions {
    /// Use this weight for every edge instead of drawing from +-U[0.5, 1.5].
    std::optional<double> fixed_weight;
};

/// Linear Gaussian SEM on the canonical DAG with unit-variance noise; latent
/// columns are dropped.
inline GaussianSample sample_gaussian(const MixedGraph& g, std::size_t n, Rng& rng, const SemOptions& opt = {}) {
    const CanonicalDag cd = canonical_dag(g);  // throws NotChainGraph
    const std::size_t q = cd.dag.size();
    const auto order = topological_order(cd.dag);

    std::uniform_real_distribution<double> magnitude(0.5, 1.5);
    std::bernoulli_distribution negative(0.5);
    std::vector<std::vector<std::pair<Vertex, double>>> weights(q);
    for (Vertex v : order) {
        for (Vertex u : cd.dag.parents(v)) {
            double w = 0.0;
            if (opt.fixed_weight) {
                w = *opt.fixed_weight;
            } else {
                w = magnitude(rng);
                if (negative(rng)) w = -w;
            }
            weights[v].emplace_back(u, w);
        }
    }

    std::normal_distribution<double> noise(0.0, 1.0);
    Eigen::MatrixXd full(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(q));
    for (Eigen::Index i = 0; i < full.rows(); ++i) {
        for (Vertex v : order) {
            double x = noise(rng);
            for (auto [u, w] : weights[v]) x += w * full(i, static_cast<Eigen::Index>(u));
            full(i, static_cast<Eigen::Index>(v)) = x;
        }
    }
    GaussianSample out;
    out.data = full.leftCols(static_cast<Eigen::Index>(g.size()));
    out.stats = GaussianStats::from_samples(out.data, g.names());
    return out;
}

// ---------------------------------------------------------------------------
// Discrete Bayesian networks

struct BayesNet {
    MixedGraph dag;
    std::vector<int> arities;
    /// Parents of each vertex in the order their CPT is indexed by.
    std::vector<std::vector<Vertex>> parents;
    /// cpts[v][config * arity + value]; parent configurations run with the last
    /// parent fastest.
    std::vector<std::vector<double>> cpts;

    std::size_t size() const { return dag.size(); }

    std::size_t config_count(Vertex v) const {
        std::size_t c = 1;
        for (Vertex u : parents[v]) c *= static_cast<std::size_t>(arities[u]);
        return c;
    }

    /// Throws InvalidCpt or CycleInDag.
    void validate() const {
        const std::size_t p = size();
        if (arities.size() != p || parents.size() != p || cpts.size() != p) throw InvalidCpt("bn: inconsistent sizes");
        try {
            topological_order(dag);
        } catch (const NotAcyclic&) {
            throw CycleInDag("bn: parent relation has a cycle");
        }
        for (Vertex v = 0; v < p; ++v) {
            const auto r = static_cast<std::size_t>(arities[v]);
            if (arities[v] < 2) throw InvalidCpt("bn: arity of '" + dag.name(v) + "' must be at least 2");
            const std::size_t rows = config_count(v);
            if (cpts[v].size() != rows * r)
                throw InvalidCpt("bn: cpt of '" + dag.name(v) + "' needs " + std::to_string(rows * r) + " entries, has " +
                                 std::to_string(cpts[v].size()));
            for (std::size_t row = 0; row < rows; ++row) {
                double sum = 0.0;
                for (std::size_t x = 0; x < r; ++x) {
                    const double pr = cpts[v][row * r + x];
                    if (!(pr >= 0.0 && pr <= 1.0)) throw InvalidCpt("bn: cpt of '" + dag.name(v) + "' has an entry outside [0, 1]");
                    sum += pr;
                }
                if (std::abs(sum - 1.0) > 1e-6)
                    throw InvalidCpt("bn: cpt row " + std::to_string(row) + " of '" + dag.name(v) + "' sums to " +
                                     std::to_string(sum));
            }
        }
    }
};

inline constexpr const char* kBnHeader = "# bn v1";

/// BN format:
///
///     # bn v1
///     node a arity 2
///     node b arity 2
///     parents b: a
///     cpt a: 0.7 0.3
///     cpt b: 0.9 0.1 0.2 0.8
inline BayesNet read_bn(std::istream& in) {
    std::string line;
    std::size_t lineno = 1;
    if (!std::getline(in, line) || detail::trim(line) != kBnHeader)
        throw ParseError("bn line 1: expected header '" + std::string(kBnHeader) + "'");
    auto fail = [&](const std::string& msg) { return ParseError("bn line " + std::to_string(lineno) + ": " + msg); };

    std::vector<std::string> names;
    std::vector<int> arities;
    std::map<std::string, Vertex> index;
    std::map<Vertex, std::vector<std::string>> parent_names;
    std::map<Vertex, std::vector<double>> cpt_values;
    auto lookup = [&](const std::string& nm) {
        auto it = index.find(nm);
        if (it == index.end()) throw fail("unknown node '" + nm + "'");
        return it->second;
    };

    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = detail::trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto colon = t.find(':');
        const auto head = detail::split_ws(colon == std::string::npos ? t : t.substr(0, colon));
        if (head.size() == 4 && head[0] == "node" && head[2] == "arity" && colon == std::string::npos) {
            if (index.count(head[1])) throw fail("duplicate node '" + head[1] + "'");
            int r = 0;
            try {
                r = std::stoi(head[3]);
            } catch (const std::logic_error&) {
                throw fail("bad arity '" + head[3] + "'");
            }
            index.emplace(head[1], names.size());
            names.push_back(head[1]);
            arities.push_back(r);
        } else if (head.size() == 2 && head[0] == "parents" && colon != std::string::npos) {
            const Vertex v = lookup(head[1]);
            if (parent_names.count(v)) throw fail("parents of '" + head[1] + "' given twice");
            parent_names[v] = detail::split_ws(t.substr(colon + 1));
        } else if (head.size() == 2 && head[0] == "cpt" && colon != std::string::npos) {
            const Vertex v = lookup(head[1]);
            if (cpt_values.count(v)) throw fail("cpt of '" + head[1] + "' given twice");
            auto& vals = cpt_values[v];
            for (const auto& tok : detail::split_ws(t.substr(colon + 1))) {
                try {
                    std::size_t used = 0;
                    vals.push_back(std::stod(tok, &used));
                    if (used != tok.size()) throw std::invalid_argument(tok);
                } catch (const std::logic_error&) {
                    throw fail("bad probability '" + tok + "'");
                }
            }
        } else {
            throw fail("expected 'node <name> arity <r>', 'parents <name>: ...' or 'cpt <name>: ...'");
        }
    }
    if (names.empty()) throw ParseError("bn: no nodes");

    BayesNet bn{MixedGraph(names), arities, std::vector<std::vector<Vertex>>(names.size()),
                std::vector<std::vector<double>>(names.size())};
    for (const auto& [v, pn] : parent_names) {
        for (const auto& nm : pn) {
            auto it = index.find(nm);
            if (it == index.end()) throw ParseError("bn: unknown parent '" + nm + "' of '" + names[v] + "'");
            const Vertex u = it->second;
            if (u == v) throw CycleInDag("bn: '" + names[v] + "' is its own parent");
            if (bn.dag.has_edge(u, v)) {
                if (bn.dag.is_directed(v, u)) throw CycleInDag("bn: '" + names[u] + "' and '" + names[v] + "' are parents of each other");
                throw ParseError("bn: parent '" + nm + "' of '" + names[v] + "' listed twice");
            }
            bn.dag.add_directed(u, v);
            bn.parents[v].push_back(u);
        }
    }
    for (Vertex v = 0; v < names.size(); ++v) {
        auto it = cpt_values.find(v);
        if (it == cpt_values.end()) throw InvalidCpt("bn: missing cpt for '" + names[v] + "'");
        bn.cpts[v] = it->second;
    }
    bn.validate();
    return bn;
}

inline BayesNet load_bn(const std::string& path) {
    auto in = detail::open_input(path);
    return read_bn(in);
}

inline void write_bn(std::ostream& out, const BayesNet& bn) {
    out << kBnHeader << '\n';
    for (Vertex v = 0; v < bn.size(); ++v) out << "node " << bn.dag.name(v) << " arity " << bn.arities[v] << '\n';
    for (Vertex v = 0; v < bn.size(); ++v) {
        if (bn.parents[v].empty()) continue;
        out << "parents " << bn.dag.name(v) << ':';
        for (Vertex u : bn.parents[v]) out << ' ' << bn.dag.name(u);
        out << '\n';
    }
    char buf[32];
    for (Vertex v = 0; v < bn.size(); ++v) {
        out << "cpt " << bn.dag.name(v) << ':';
        for (double x : bn.cpts[v]) {
            std::snprintf(buf, sizeof buf, "%.17g", x);
            out << ' ' << buf;
        }
        out << '\n';
    }
}

/// Forward sampling in topological order.
inline DiscreteData sample_discrete(const BayesNet& bn, std::size_t n, Rng& rng) {
    const std::size_t p = bn.size();
    const auto order = topological_order(bn.dag);
    DiscreteData out;
    out.names = bn.dag.names();
    out.arities = bn.arities;
    out.columns.assign(p, std::vector<int>(n));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (Vertex v : order) {
            std::size_t config = 0;
            for (Vertex u : bn.parents[v]) config = config * static_cast<std::size_t>(bn.arities[u]) + static_cast<std::size_t>(out.columns[u][i]);
            const auto r = static_cast<std::size_t>(bn.arities[v]);
            const double* row = &bn.cpts[v][config * r];
            const double draw = unit(rng);
            double acc = 0.0;
            std::size_t x = 0;
            for (; x + 1 < r; ++x) {
                acc += row[x];
                if (draw < acc) break;
            }
            out.columns[v][i] = static_cast<int>(x);
        }
    }
    return out;
}

}  // namespace mvrcg
