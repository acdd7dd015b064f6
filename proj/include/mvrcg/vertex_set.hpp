#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <set>
#include <utility>
#include <vector>

namespace mvrcg {

/// Dense vertex index in 0..p-1.
using Vertex = std::size_t;
using VertexSet = std::set<Vertex>;
/// Unordered vertex pair, stored with first < second.
using VertexPair = std::pair<Vertex, Vertex>;

inline VertexPair make_pair_key(Vertex a, Vertex b) { return a < b ? VertexPair{a, b} : VertexPair{b, a}; }

inline VertexSet set_union(const VertexSet& a, const VertexSet& b) {
    VertexSet out = a;
    out.insert(b.begin(), b.end());
    return out;
}

inline VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

inline VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

inline bool is_subset(const VertexSet& a, const VertexSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool are_disjoint(const VertexSet& a, const VertexSet& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia == *ib) return false;
        if (*ia < *ib) ++ia;
        else ++ib;
    }
    return true;
}

inline VertexSet range_set(std::size_t p) {
    VertexSet out;
    for (Vertex v = 0; v < p; ++v) out.insert(out.end(), v);
    return out;
}

/// Calls `visit(subset)` for every size-k subset of `pool` (which must be sorted),
/// in lexicographic order. Stops early and returns true once `visit` returns true.
template <class Visitor>
bool for_each_subset_of_size(const std::vector<Vertex>& pool, std::size_t k, Visitor&& visit) {
    const std::size_t n = pool.size();
    if (k > n) return false;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        VertexSet subset;
        for (std::size_t i : idx) subset.insert(subset.end(), pool[i]);
        if (visit(static_cast<const VertexSet&>(subset))) return true;
        // advance to the next combination
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) return false;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace mvrcg
