#pragma once

#include <cstdio>
#include <string>

#include "mvrcg/ci_tests.hpp"
#include "mvrcg/errors.hpp"
#include "mvrcg/learn_decomp.hpp"
#include "mvrcg/mixed_graph.hpp"
#include "mvrcg/undirected_graph.hpp"

namespace mvrcg {

struct SkeletonMetrics {
    double tpr = 0.0;
    double fpr = 0.0;
    double acc = 0.0;
    std::size_t tp = 0, fp = 0, pos = 0, neg = 0;
    /// Set when the truth has no edges (tpr reported as 1).
    bool no_positives = false;
    /// Set when the truth is complete (fpr reported as 0).
    bool no_negatives = false;
};

inline SkeletonMetrics skeleton_metrics(const UndirectedGraph& learned, const UndirectedGraph& truth) {
    if (learned.size() != truth.size()) throw VertexMismatch("skeleton_metrics: vertex counts differ");
    const std::size_t p = truth.size();
    SkeletonMetrics m;
    m.pos = truth.edge_count();
    m.neg = p * (p - 1) / 2 - m.pos;
    for (auto [u, v] : learned.edges()) {
        if (truth.adjacent(u, v)) ++m.tp;
        else ++m.fp;
    }
    const std::size_t tn = m.neg - m.fp;
    m.no_positives = m.pos == 0;
    m.no_negatives = m.neg == 0;
    m.tpr = m.no_positives ? 1.0 : static_cast<double>(m.tp) / static_cast<double>(m.pos);
    m.fpr = m.no_negatives ? 0.0 : static_cast<double>(m.fp) / static_cast<double>(m.neg);
    m.acc = (m.pos + m.neg) == 0 ? 1.0 : static_cast<double>(m.tp + tn) / static_cast<double>(m.pos + m.neg);
    return m;
}

/// Structural Hamming distance: one unit per vertex pair whose adjacency or
/// endpoint marks differ.
inline std::size_t shd(const MixedGraph& learned, const MixedGraph& truth) {
    if (learned.size() != truth.size()) throw VertexMismatch("shd: vertex counts differ");
    std::size_t d = 0;
    const std::size_t p = truth.size();
    for (Vertex u = 0; u < p; ++u) {
        for (Vertex v = u + 1; v < p; ++v) {
            const bool a = learned.has_edge(u, v), b = truth.has_edge(u, v);
            if (a != b) ++d;
            else if (a && (learned.mark(u, v) != truth.mark(u, v) || learned.mark(v, u) != truth.mark(v, u))) ++d;
        }
    }
    return d;
}

/// The pattern the decomposition learner recovers from an exact oracle.
inline Pattern true_pattern(const MixedGraph& g) {
    const OracleTester oracle(g);  // throws NotChainGraph
    return learn(oracle, Variant::Essential, 0.0).pattern;
}

struct MetricsReport {
    double tpr = 0.0;
    double fpr = 0.0;
    double acc = 0.0;
    std::size_t shd = 0;
    double runtime_ms = 0.0;
};

inline constexpr const char* kBenchmarkCsvHeader = "rep,p,N,k,n,alpha,algorithm,variant,tpr,fpr,acc,shd,runtime_ms";

struct BenchmarkRow {
    std::size_t rep = 0;
    std::size_t p = 0;
    double N = 0.0;
    double k = 0.0;
    std::size_t n = 0;
    double alpha = 0.0;
    std::string algorithm;
    std::string variant;
    MetricsReport metrics;
};

inline std::string format_csv_row(const BenchmarkRow& r) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%zu,%zu,%.6f,%.6f,%zu,%.6f,%s,%s,%.6f,%.6f,%.6f,%zu,%.6f", r.rep, r.p, r.N, r.k, r.n,
                  r.alpha, r.algorithm.c_str(), r.variant.c_str(), r.metrics.tpr, r.metrics.fpr, r.metrics.acc,
                  r.metrics.shd, r.metrics.runtime_ms);
    return buf;
}

}  // namespace mvrcg
