#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "umw/topology.hpp"

namespace umw::testing {

// Random simple graph with n nodes and at most max_edges edges.
inline Graph random_graph(std::mt19937_64& rng, int n, int max_edges, bool directed) {
    std::vector<std::pair<NodeId, NodeId>> all;
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (u == v || (!directed && v < u)) continue;
            all.emplace_back(u, v);
        }
    }
    std::shuffle(all.begin(), all.end(), rng);
    const int cap = std::min<int>(max_edges, static_cast<int>(all.size()));
    const int m = std::uniform_int_distribution<int>(1, cap)(rng);
    all.resize(static_cast<std::size_t>(m));
    return Graph(n, all, directed);
}

inline std::vector<double> random_weights(std::mt19937_64& rng, int m, int hi = 9) {
    std::uniform_int_distribution<int> d(0, hi);
    std::vector<double> w(static_cast<std::size_t>(m));
    for (auto& x : w) x = d(rng);
    return w;
}

inline bool is_matching(const Graph& g, const std::vector<EdgeId>& set) {
    std::vector<char> used(static_cast<std::size_t>(g.node_count()), 0);
    for (EdgeId e : set) {
        const Edge& ed = g.edge(e);
        if (used[static_cast<std::size_t>(ed.u)] || used[static_cast<std::size_t>(ed.v)]) return false;
        used[static_cast<std::size_t>(ed.u)] = used[static_cast<std::size_t>(ed.v)] = 1;
    }
    return true;
}

// Every matching (maximal or not) by subset enumeration.
inline std::vector<std::vector<EdgeId>> all_matchings(const Graph& g) {
    std::vector<std::vector<EdgeId>> out;
    const int m = g.edge_count();
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        std::vector<EdgeId> set;
        for (int e = 0; e < m; ++e)
            if (mask & (1u << e)) set.push_back(e);
        if (is_matching(g, set)) out.push_back(set);
    }
    return out;
}

}  // namespace umw::testing
