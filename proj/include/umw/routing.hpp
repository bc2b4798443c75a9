#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "umw/topology.hpp"
#include "umw/traffic.hpp"

namespace umw {

/// Nonnegative per-edge weights (virtual or physical queue lengths).
class EdgeWeights {
  public:
    EdgeWeights() = default;
    explicit EdgeWeights(std::vector<double> w);
    static EdgeWeights zeros(int edge_count) { return EdgeWeights(std::vector<double>(static_cast<std::size_t>(edge_count), 0.0)); }
    static EdgeWeights from_counts(std::span<const std::int64_t> counts);

    double operator[](EdgeId e) const { return w_[static_cast<std::size_t>(e)]; }
    int size() const noexcept { return static_cast<int>(w_.size()); }
    std::span<const double> values() const noexcept { return w_; }

  private:
    std::vector<double> w_;
};

struct TreeEdge {
    EdgeId edge = 0;
    NodeId parent = 0;
    NodeId child = 0;
    int depth = 0;  // root-adjacent edges have depth 0

    bool operator==(const TreeEdge&) const = default;
};

/// Out-tree rooted at the class source. `edges` is ordered by (depth, edge id).
struct RouteTree {
    NodeId root = 0;
    std::vector<TreeEdge> edges;
    std::vector<NodeId> covered;  // sorted

    bool operator==(const RouteTree&) const = default;

    std::vector<EdgeId> edge_ids() const;  // sorted
    bool contains(EdgeId e) const;
};

/// Orients `edge_set` away from `root` and assigns depths. Throws
/// ValidationError if the edges do not form an out-tree containing root.
RouteTree orient_tree(const Graph& g, NodeId root, std::span<const EdgeId> edge_set, std::vector<NodeId> covered);

/// Non-throwing variant of orient_tree for enumeration loops.
std::optional<RouteTree> try_orient_tree(const Graph& g, NodeId root, std::span<const EdgeId> edge_set,
                                         std::vector<NodeId> covered);

/// Structural check of every RouteTree invariant against `g`.
bool is_valid_route(const Graph& g, const RouteTree& tree);

double route_cost(const RouteTree& tree, const EdgeWeights& w);

/// Minimum-weight s-t path; ties by fewer hops, then lexicographically
/// smallest edge-id sequence. Throws UnreachableError.
RouteTree shortest_path_route(const Graph& g, const EdgeWeights& w, NodeId s, NodeId t);

/// Minimum spanning tree oriented from root (undirected) or minimum
/// arborescence (directed); ties by lexicographically smallest sorted
/// edge-id set. Throws UnreachableError if some node is unreachable.
RouteTree spanning_route(const Graph& g, const EdgeWeights& w, NodeId root);

enum class SteinerMode { exact, approx };

inline constexpr int kDefaultSteinerCap = 8;

RouteTree steiner_route(const Graph& g, const EdgeWeights& w, NodeId root, std::span<const NodeId> terminals,
                        SteinerMode mode, int cap = kDefaultSteinerCap);

/// Cheapest of the per-destination shortest paths; ties by smallest node id.
RouteTree anycast_route(const Graph& g, const EdgeWeights& w, NodeId s, std::span<const NodeId> dests);

struct RoutingOptions {
    SteinerMode steiner_mode = SteinerMode::exact;
    int steiner_cap = kDefaultSteinerCap;  // exact mode falls back to approx above this

    bool operator==(const RoutingOptions&) const = default;
};

/// Min-cost admissible route for one class.
RouteTree solve_route(const Graph& g, const EdgeWeights& w, const TrafficClass& cls, const RoutingOptions& opts);

}  // namespace umw
