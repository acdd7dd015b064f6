#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mvrcg/errors.hpp"
#include "mvrcg/vertex_set.hpp"

namespace mvrcg {

/// Endpoint mark of an edge.
enum class Mark : std::uint8_t { Tail, Arrow };

/// Graph with per-endpoint edge marks. At most one edge per vertex pair:
///   a -> b   = (Tail at a, Arrow at b)
///   a <-> b  = (Arrow, Arrow)
///   a -- b   = (Tail, Tail)
/// Used for MVR chain graphs, DAGs and the partially oriented patterns built
/// during learning. Orientation only ever turns a Tail into an Arrow.
class MixedGraph {
public:
    MixedGraph() = default;

    explicit MixedGraph(std::vector<std::string> names) : names_(std::move(names)) {
        const std::size_t p = names_.size();
        for (Vertex v = 0; v < p; ++v) {
            const auto& nm = names_[v];
            if (nm.empty()) throw GraphError("vertex names must be non-empty");
            if (nm.find_first_of(" \t\r\n,:") != std::string::npos)
                throw GraphError("vertex name '" + nm + "' contains whitespace or a separator");
            if (!index_.emplace(nm, v).second) throw GraphError("duplicate vertex name '" + nm + "'");
        }
        adj_.resize(p);
        marks_.assign(p * p, Mark::Tail);
    }

    /// Vertices named X1..Xp.
    static MixedGraph with_default_names(std::size_t p) {
        std::vector<std::string> names;
        names.reserve(p);
        for (std::size_t i = 0; i < p; ++i) names.push_back("X" + std::to_string(i + 1));
        return MixedGraph(std::move(names));
    }

    std::size_t size() const { return names_.size(); }
    const std::string& name(Vertex v) const {
        check(v);
        return names_[v];
    }
    const std::vector<std::string>& names() const { return names_; }

    std::optional<Vertex> find(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    Vertex vertex(const std::string& name) const {
        auto v = find(name);
        if (!v) throw GraphError("unknown vertex '" + name + "'");
        return *v;
    }

    void add_edge(Vertex u, Vertex v, Mark at_u, Mark at_v) {
        check(u);
        check(v);
        if (u == v) throw GraphError("self-loop on '" + names_[u] + "'");
        if (adj_[u].count(v))
            throw GraphError("duplicate edge between '" + names_[u] + "' and '" + names_[v] + "'");
        adj_[u].insert(v);
        adj_[v].insert(u);
        mark_ref(u, v) = at_u;
        mark_ref(v, u) = at_v;
    }

    void add_directed(Vertex from, Vertex to) { add_edge(from, to, Mark::Tail, Mark::Arrow); }
    void add_bidirected(Vertex u, Vertex v) { add_edge(u, v, Mark::Arrow, Mark::Arrow); }
    void add_undirected(Vertex u, Vertex v) { add_edge(u, v, Mark::Tail, Mark::Tail); }

    void remove_edge(Vertex u, Vertex v) {
        check(u);
        check(v);
        adj_[u].erase(v);
        adj_[v].erase(u);
        mark_ref(u, v) = Mark::Tail;
        mark_ref(v, u) = Mark::Tail;
    }

    bool has_edge(Vertex u, Vertex v) const {
        check(u);
        check(v);
        return adj_[u].count(v) > 0;
    }

    /// Mark at endpoint `at` of the edge {at, other}. The edge must exist.
    Mark mark(Vertex at, Vertex other) const {
        require_edge(at, other);
        return marks_[at * size() + other];
    }

    bool arrow_at(Vertex at, Vertex other) const { return has_edge(at, other) && mark(at, other) == Mark::Arrow; }
    bool tail_at(Vertex at, Vertex other) const { return has_edge(at, other) && mark(at, other) == Mark::Tail; }

    /// Turns the mark at `at` on edge {at, other} into an arrowhead.
    /// Returns true if the mark changed.
    bool add_arrowhead(Vertex at, Vertex other) {
        require_edge(at, other);
        Mark& m = mark_ref(at, other);
        if (m == Mark::Arrow) return false;
        m = Mark::Arrow;
        return true;
    }

    bool is_directed(Vertex from, Vertex to) const { return tail_at(from, to) && mark(to, from) == Mark::Arrow; }
    bool is_bidirected(Vertex u, Vertex v) const { return arrow_at(u, v) && mark(v, u) == Mark::Arrow; }
    bool is_undirected(Vertex u, Vertex v) const { return tail_at(u, v) && mark(v, u) == Mark::Tail; }

    const VertexSet& adjacent(Vertex v) const {
        check(v);
        return adj_[v];
    }

    VertexSet parents(Vertex v) const {
        return select(v, [&](Vertex u) { return is_directed(u, v); });
    }
    VertexSet children(Vertex v) const {
        return select(v, [&](Vertex w) { return is_directed(v, w); });
    }
    /// Vertices joined to v by a bidirected edge.
    VertexSet spouses(Vertex v) const {
        return select(v, [&](Vertex w) { return is_bidirected(v, w); });
    }
    VertexSet undirected_neighbors(Vertex v) const {
        return select(v, [&](Vertex w) { return is_undirected(v, w); });
    }

    std::vector<VertexPair> edge_pairs() const {
        std::vector<VertexPair> out;
        for (Vertex u = 0; u < size(); ++u)
            for (Vertex v : adj_[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    std::size_t edge_count() const {
        std::size_t twice = 0;
        for (const auto& a : adj_) twice += a.size();
        return twice / 2;
    }

    bool operator==(const MixedGraph& o) const {
        if (names_ != o.names_ || adj_ != o.adj_) return false;
        for (Vertex u = 0; u < size(); ++u)
            for (Vertex v : adj_[u])
                if (mark(u, v) != o.mark(u, v)) return false;
        return true;
    }

private:
    template <class Pred>
    VertexSet select(Vertex v, Pred pred) const {
        check(v);
        VertexSet out;
        for (Vertex w : adj_[v])
            if (pred(w)) out.insert(out.end(), w);
        return out;
    }

    void check(Vertex v) const {
        if (v >= names_.size()) throw GraphError("vertex index " + std::to_string(v) + " out of range");
    }
    void require_edge(Vertex u, Vertex v) const {
        if (!has_edge(u, v)) throw GraphError("no edge between '" + names_[u] + "' and '" + names_[v] + "'");
    }
    Mark& mark_ref(Vertex at, Vertex other) { return marks_[at * size() + other]; }

    std::vector<std::string> names_;
    std::map<std::string, Vertex> index_;
    std::vector<VertexSet> adj_;
    std::vector<Mark> marks_;  // marks_[at * p + other]
};

/// A partially oriented graph produced during learning. No chain-graph
/// requirement applies while orientation is in progress.
using Pattern = MixedGraph;

}  // namespace mvrcg
