#pragma once

#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "mvrcg/mvrcg.hpp"

namespace mvrcg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::vector<std::string> split_names(const std::string& list) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(list);
    while (std::getline(in, cell, ',')) {
        cell = detail::trim(cell);
        if (!cell.empty()) out.push_back(cell);
    }
    return out;
}

inline VertexSet resolve(const MixedGraph& g, const std::string& list) {
    VertexSet s;
    for (const auto& nm : split_names(list)) {
        const auto v = g.find(nm);
        if (!v) throw UsageError("unknown vertex '" + nm + "'");
        s.insert(*v);
    }
    return s;
}

inline Variant parse_variant(const std::string& v) { return v == "minbd" ? Variant::MinBidirected : Variant::Essential; }

inline void write_text(const std::string& path, const std::string& text) {
    auto out = detail::open_output(path);
    out << text;
    if (!out) throw Error("failed writing '" + path + "'");
}

inline std::string sepsets_to_string(const SepsetMap& m, const std::vector<std::string>& names) {
    std::ostringstream s;
    write_sepsets(s, m, names);
    return s.str();
}

inline void emit_warnings(const LearnResult& r, std::ostream& err) {
    for (const auto& w : r.warnings) err << "warning: " << w << '\n';
}

inline LearnResult run_learner(const CITester& tester, const std::string& algo, Variant variant, double alpha,
                               const std::optional<SeparationTree>& tree, const LearnOptions& opt) {
    if (algo == "pc") return pc_learn(tester, variant, alpha);
    if (tree) return learn(tester, *tree, variant, alpha, opt);
    return learn(tester, variant, alpha, opt);
}

// ---------------------------------------------------------------------------
// benchmark

struct BenchmarkConfig {
    std::vector<std::size_t> ps;
    std::vector<double> Ns;
    std::vector<std::size_t> ns;
    std::vector<double> alphas;
    std::size_t reps = 1;
    std::uint64_t seed = 0;
    std::vector<std::string> algorithms;
    std::string variant = "essential";
    std::size_t jobs = 1;
    bool omit_runtime = false;
};

/// All rows of one (p, N, rep) cell: graph seeded with seed + rep, latent
/// fraction drawn from the allowed set, one dataset per n drawn in sequence
/// and reused across alpha.
inline std::vector<BenchmarkRow> benchmark_cell(const BenchmarkConfig& bc, std::size_t p, double N, std::size_t rep) {
    Rng rng(bc.seed + rep);
    SimConfig cfg;
    cfg.p = p;
    cfg.N = N;
    const auto ks = cfg.allowed_k();
    cfg.k = ks[std::uniform_int_distribution<std::size_t>(0, ks.size() - 1)(rng)];
    const MixedGraph g = random_mvr_cg(cfg, rng);
    const UndirectedGraph truth_skel = skeleton(g);
    const Variant variant = parse_variant(bc.variant);
    Pattern target = true_pattern(g);
    if (variant == Variant::MinBidirected) target = minimum_bidirected(target);

    std::vector<BenchmarkRow> rows;
    for (std::size_t n : bc.ns) {
        const GaussianSample sample = sample_gaussian(g, n, rng);
        const GaussianTester tester(sample.stats);
        for (double alpha : bc.alphas) {
            for (const auto& algo : bc.algorithms) {
                const auto t0 = std::chrono::steady_clock::now();
                const LearnResult r = run_learner(tester, algo, variant, alpha, std::nullopt, {});
                const auto t1 = std::chrono::steady_clock::now();
                BenchmarkRow row{rep, p, N, cfg.k, n, alpha, algo, bc.variant, {}};
                const auto sm = skeleton_metrics(r.skeleton, truth_skel);
                row.metrics.tpr = sm.tpr;
                row.metrics.fpr = sm.fpr;
                row.metrics.acc = sm.acc;
                row.metrics.shd = shd(r.graph, target);
                row.metrics.runtime_ms =
                    bc.omit_runtime ? 0.0 : std::chrono::duration<double, std::milli>(t1 - t0).count();
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

inline std::vector<BenchmarkRow> run_benchmark(const BenchmarkConfig& bc) {
    struct Cell {
        std::size_t p;
        double N;
        std::size_t rep;
    };
    std::vector<Cell> cells;
    for (std::size_t p : bc.ps)
        for (double N : bc.Ns)
            for (std::size_t r = 0; r < bc.reps; ++r) cells.push_back({p, N, r});

    std::vector<std::vector<BenchmarkRow>> results(cells.size());
    std::vector<std::exception_ptr> errors(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            try {
                results[i] = benchmark_cell(bc, cells[i].p, cells[i].N, cells[i].rep);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t jobs = std::max<std::size_t>(1, std::min(bc.jobs, cells.size()));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    std::vector<BenchmarkRow> rows;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        rows.insert(rows.end(), results[i].begin(), results[i].end());
    }
    return rows;
}

// ---------------------------------------------------------------------------

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Structure learning for multivariate regression chain graphs"};
    app.name("mvrcg");
    app.require_subcommand(1);

    const auto variants = CLI::IsMember({"essential", "minbd"});
    const auto algos = CLI::IsMember({"decomp", "pc"});

    // learn
    auto* learn_cmd = app.add_subcommand("learn", "Learn a graph from a data file");
    std::string data_path, data_type = "gaussian", algo = "decomp", variant = "essential", out_path, sepsets_path,
                hyper_path;
    double alpha = 0.01;
    std::size_t dense_threshold = LearnOptions{}.dense_node_threshold;
    learn_cmd->add_option("--data", data_path, "CSV data file")->required();
    learn_cmd->add_option("--type", data_type, "Data type")->check(CLI::IsMember({"gaussian", "discrete"}));
    learn_cmd->add_option("--alpha", alpha, "Significance level")->check(CLI::Range(0.0, 1.0));
    learn_cmd->add_option("--algo", algo, "Learner")->check(algos);
    learn_cmd->add_option("--variant", variant, "Output form")->check(variants);
    learn_cmd->add_option("--out", out_path, "Output graph file")->required();
    learn_cmd->add_option("--sepsets", sepsets_path, "Optional separating-set output file");
    learn_cmd->add_option("--hypergraph", hyper_path, "Build the separation tree from this hypergraph (decomp only)");
    learn_cmd->add_option("--dense-threshold", dense_threshold, "Tree node size above which conditioning sets are capped");

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "Learn from exact m-separation queries on a known graph");
    std::string graph_path;
    oracle_cmd->add_option("--graph", graph_path, "Graph file")->required();
    oracle_cmd->add_option("--algo", algo, "Learner")->check(algos);
    oracle_cmd->add_option("--variant", variant, "Output form")->check(variants);
    oracle_cmd->add_option("--out", out_path, "Output graph file")->required();
    oracle_cmd->add_option("--sepsets", sepsets_path, "Optional separating-set output file");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "Draw a random MVR chain graph and Gaussian data, or sample a BN");
    SimConfig sim;
    std::string out_graph, out_data, bn_path;
    sim_cmd->add_option("--p", sim.p, "Observed vertex count");
    sim_cmd->add_option("--N", sim.N, "Expected neighbours per vertex");
    sim_cmd->add_option("--k", sim.k, "Latent fraction");
    sim_cmd->add_option("--n", sim.n, "Sample size");
    sim_cmd->add_option("--seed", sim.seed, "Random seed");
    sim_cmd->add_option("--bn", bn_path, "Sample discrete data from this Bayesian network instead");
    sim_cmd->add_option("--out-graph", out_graph, "Output graph file")->required();
    sim_cmd->add_option("--out-data", out_data, "Output CSV file")->required();

    // benchmark
    auto* bench_cmd = app.add_subcommand("benchmark", "Gaussian benchmark grid");
    BenchmarkConfig bc;
    bc.ps = {10};
    bc.Ns = {2};
    bc.ns = {1000};
    bc.alphas = {0.01};
    std::string bench_algo = "both";
    bench_cmd->add_option("--p", bc.ps, "Vertex counts")->delimiter(',');
    bench_cmd->add_option("--N", bc.Ns, "Expected neighbour counts")->delimiter(',');
    bench_cmd->add_option("--n", bc.ns, "Sample sizes")->delimiter(',');
    bench_cmd->add_option("--alpha", bc.alphas, "Significance levels")->delimiter(',');
    bench_cmd->add_option("--reps", bc.reps, "Replicates per (p, N)");
    bench_cmd->add_option("--seed", bc.seed, "Base seed; replicate r uses seed + r");
    bench_cmd->add_option("--algo", bench_algo, "Learners")->check(CLI::IsMember({"both", "decomp", "pc"}));
    bench_cmd->add_option("--variant", bc.variant, "Output form")->check(variants);
    bench_cmd->add_option("--jobs", bc.jobs, "Worker threads over replicates")->check(CLI::PositiveNumber);
    bench_cmd->add_flag("--omit-runtime", bc.omit_runtime, "Write 0 in the runtime column");
    bench_cmd->add_option("--out", out_path, "Output CSV file")->required();

    // tree
    auto* tree_cmd = app.add_subcommand("tree", "Build an m-separation tree");
    std::string validate_path;
    auto* tree_data = tree_cmd->add_option("--data", data_path, "CSV data file");
    tree_cmd->add_option("--type", data_type, "Data type")->check(CLI::IsMember({"gaussian", "discrete"}));
    tree_cmd->add_option("--alpha", alpha, "Significance level")->check(CLI::Range(0.0, 1.0));
    auto* tree_graph = tree_cmd->add_option("--graph", graph_path, "Graph file (exact oracle)");
    auto* tree_hyper = tree_cmd->add_option("--hypergraph", hyper_path, "Hypergraph file");
    tree_data->excludes(tree_graph, tree_hyper);
    tree_graph->excludes(tree_hyper);
    tree_cmd->add_option("--out", out_path, "Output tree file")->required();
    tree_cmd->add_option("--validate-against", validate_path, "Check the tree against this graph");

    // msep
    auto* msep_cmd = app.add_subcommand("msep", "Query m-separation of X and Y given Z");
    std::string xs, ys, zs;
    msep_cmd->add_option("--graph", graph_path, "Graph file")->required();
    msep_cmd->add_option("--x", xs, "Comma-separated vertex names")->required();
    msep_cmd->add_option("--y", ys, "Comma-separated vertex names")->required();
    msep_cmd->add_option("--z", zs, "Comma-separated vertex names (may be empty)");

    std::vector<std::string> argv_store{"mvrcg"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*learn_cmd) {
            std::unique_ptr<CITester> tester;
            if (data_type == "gaussian") {
                const auto d = read_continuous_csv_file(data_path);
                tester = std::make_unique<GaussianTester>(GaussianStats::from_samples(d.values, d.names));
            } else {
                tester = std::make_unique<DiscreteTester>(read_discrete_csv_file(data_path));
            }
            std::optional<SeparationTree> tree;
            if (!hyper_path.empty()) {
                if (algo != "decomp") throw UsageError("--hypergraph requires --algo decomp");
                auto in = detail::open_input(hyper_path);
                auto ht = tree_from_hypergraph(read_hypergraph(in, &tester->names()));
                if (ht.dropped_hyperedges)
                    err << "warning: dropped " << ht.dropped_hyperedges << " subsumed or empty hyperedge(s)\n";
                tree = std::move(ht.tree);
            }
            LearnOptions opt;
            opt.dense_node_threshold = dense_threshold;
            const LearnResult r = run_learner(*tester, algo, parse_variant(variant), alpha, tree, opt);
            emit_warnings(r, err);
            write_graph_file(out_path, r.graph);
            if (!sepsets_path.empty()) write_text(sepsets_path, sepsets_to_string(r.sepsets, r.graph.names()));
        } else if (*oracle_cmd) {
            const OracleTester tester(read_graph_file(graph_path));
            const LearnResult r = run_learner(tester, algo, parse_variant(variant), 0.0, std::nullopt, {});
            emit_warnings(r, err);
            write_graph_file(out_path, r.graph);
            if (!sepsets_path.empty()) write_text(sepsets_path, sepsets_to_string(r.sepsets, r.graph.names()));
        } else if (*sim_cmd) {
            Rng rng(sim.seed);
            if (!bn_path.empty()) {
                const BayesNet bn = load_bn(bn_path);
                write_graph_file(out_graph, bn.dag);
                std::ostringstream csv;
                write_discrete_csv(csv, sample_discrete(bn, sim.n, rng));
                write_text(out_data, csv.str());
            } else {
                const MixedGraph g = random_mvr_cg(sim, rng);
                const GaussianSample s = sample_gaussian(g, sim.n, rng);
                write_graph_file(out_graph, g);
                std::ostringstream csv;
                write_continuous_csv(csv, g.names(), s.data);
                write_text(out_data, csv.str());
            }
        } else if (*bench_cmd) {
            if (bench_algo == "both") bc.algorithms = {"decomp", "pc"};
            else bc.algorithms = {bench_algo};
            const auto rows = run_benchmark(bc);
            std::ostringstream csv;
            csv << kBenchmarkCsvHeader << '\n';
            for (const auto& row : rows) csv << format_csv_row(row) << '\n';
            write_text(out_path, csv.str());
        } else if (*tree_cmd) {
            std::vector<std::string> names;
            SeparationTree tree;
            if (!data_path.empty()) {
                if (data_type == "gaussian") {
                    const auto d = read_continuous_csv_file(data_path);
                    tree = tree_from_data(GaussianTester(GaussianStats::from_samples(d.values, d.names)), alpha);
                    names = d.names;
                } else {
                    const DiscreteTester tester(read_discrete_csv_file(data_path));
                    tree = tree_from_data(tester, alpha);
                    names = tester.names();
                }
            } else if (!graph_path.empty()) {
                const OracleTester tester(read_graph_file(graph_path));
                tree = tree_from_data(tester, 0.0);
                names = tester.names();
            } else if (!hyper_path.empty()) {
                std::optional<MixedGraph> against;
                if (!validate_path.empty()) against = read_graph_file(validate_path);
                auto in = detail::open_input(hyper_path);
                const Hypergraph h = read_hypergraph(in, against ? &against->names() : nullptr);
                auto ht = tree_from_hypergraph(h);
                if (ht.dropped_hyperedges)
                    err << "warning: dropped " << ht.dropped_hyperedges << " subsumed or empty hyperedge(s)\n";
                tree = std::move(ht.tree);
                names = h.names;
            } else {
                throw UsageError("tree needs one of --data, --graph or --hypergraph");
            }
            std::ostringstream text;
            write_tree(text, tree, names);
            write_text(out_path, text.str());
            if (!validate_path.empty()) {
                const MixedGraph g = read_graph_file(validate_path);
                if (g.names() != names) throw VertexMismatch("tree and graph have different vertex names");
                const auto violations = validate_tree(tree, g);
                out << (violations.empty() ? "valid" : "invalid") << '\n';
                for (const auto& v : violations) out << v.message << '\n';
            }
        } else if (*msep_cmd) {
            const MixedGraph g = read_graph_file(graph_path);
            out << (m_separated(g, resolve(g, xs), resolve(g, ys), resolve(g, zs)) ? "true" : "false") << '\n';
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    }
    return kExitOk;
}

}  // namespace mvrcg::cli
