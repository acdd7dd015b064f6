#pragma once

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mvrcg/errors.hpp"
#include "mvrcg/graph_io.hpp"
#include "mvrcg/vertex_set.hpp"

namespace mvrcg {

/// Separating sets recorded for removed pairs, keyed by unordered pair.
class SepsetMap {
public:
    /// Keeps an existing entry; returns false in that case.
    bool record(Vertex u, Vertex v, VertexSet s) {
        if (u == v) throw GraphError("sepset for a vertex with itself");
        if (s.count(u) || s.count(v)) throw OverlappingSets("sepset contains an endpoint");
        return map_.emplace(make_pair_key(u, v), std::move(s)).second;
    }

    bool contains(Vertex u, Vertex v) const { return map_.count(make_pair_key(u, v)) > 0; }

    const VertexSet* find(Vertex u, Vertex v) const {
        auto it = map_.find(make_pair_key(u, v));
        return it == map_.end() ? nullptr : &it->second;
    }

    std::size_t size() const { return map_.size(); }
    bool empty() const { return map_.empty(); }
    auto begin() const { return map_.begin(); }
    auto end() const { return map_.end(); }
    bool operator==(const SepsetMap&) const = default;

private:
    std::map<VertexPair, VertexSet> map_;
};

/// One line per pair: `u , v : s1 s2`.
inline void write_sepsets(std::ostream& out, const SepsetMap& m, const std::vector<std::string>& names) {
    for (const auto& [pair, s] : m) {
        out << names.at(pair.first) << " , " << names.at(pair.second) << " :";
        for (Vertex w : s) out << ' ' << names.at(w);
        out << '\n';
    }
}

inline SepsetMap read_sepsets(std::istream& in, const std::vector<std::string>& names) {
    std::map<std::string, Vertex> index;
    for (Vertex v = 0; v < names.size(); ++v) index.emplace(names[v], v);
    auto lookup = [&](const std::string& nm, std::size_t lineno) {
        auto it = index.find(nm);
        if (it == index.end()) throw ParseError("sepset line " + std::to_string(lineno) + ": unknown vertex '" + nm + "'");
        return it->second;
    };
    SepsetMap m;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = detail::trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto colon = t.find(':');
        const auto comma = t.find(',');
        if (colon == std::string::npos || comma == std::string::npos || comma > colon)
            throw ParseError("sepset line " + std::to_string(lineno) + ": expected 'u , v : s...'");
        const auto lhs = detail::split_ws(t.substr(0, comma));
        const auto rhs = detail::split_ws(t.substr(comma + 1, colon - comma - 1));
        if (lhs.size() != 1 || rhs.size() != 1)
            throw ParseError("sepset line " + std::to_string(lineno) + ": expected one vertex on each side of ','");
        VertexSet s;
        for (const auto& nm : detail::split_ws(t.substr(colon + 1))) s.insert(lookup(nm, lineno));
        try {
            m.record(lookup(lhs[0], lineno), lookup(rhs[0], lineno), std::move(s));
        } catch (const Error& e) {
            throw ParseError("sepset line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return m;
}

}  // namespace mvrcg
