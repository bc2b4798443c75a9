#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace umw {

using NodeId = int;
using EdgeId = int;

struct Edge {
    EdgeId id = 0;
    NodeId u = 0;
    NodeId v = 0;

    // The far endpoint when leaving `from`; -1 when `from` is not an endpoint.
    NodeId other(NodeId from) const noexcept { return from == u ? v : (from == v ? u : -1); }
    bool operator==(const Edge&) const = default;
};

// One traversable direction of an edge. Undirected edges contribute two arcs.
struct Arc {
    EdgeId edge = 0;
    NodeId from = 0;
    NodeId to = 0;
};

/// Network graph with edge ids 0..m-1 in insertion order.
///
/// Validation happens on construction: node ids in range, no self-loops, and
/// no duplicate edges (unordered pairs for undirected graphs, ordered pairs
/// for directed ones).
class Graph {
  public:
    Graph() = default;
    Graph(int node_count, const std::vector<std::pair<NodeId, NodeId>>& endpoints, bool directed);

    int node_count() const noexcept { return node_count_; }
    int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
    bool directed() const noexcept { return directed_; }

    const Edge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }
    std::span<const Edge> edges() const noexcept { return edges_; }

    std::span<const Arc> out_arcs(NodeId v) const { return out_.at(static_cast<std::size_t>(v)); }
    std::span<const Arc> in_arcs(NodeId v) const { return in_.at(static_cast<std::size_t>(v)); }

    // Direction in which `e` may be crossed from `from`, or an arc with to == -1.
    Arc arc_from(EdgeId e, NodeId from) const;

    bool operator==(const Graph& other) const {
        return node_count_ == other.node_count_ && directed_ == other.directed_ && edges_ == other.edges_;
    }

  private:
    int node_count_ = 0;
    bool directed_ = false;
    std::vector<Edge> edges_;
    std::vector<std::vector<Arc>> out_;
    std::vector<std::vector<Arc>> in_;
};

enum class ActivationKind { wired, primary_interference, explicit_sets };

const char* to_string(ActivationKind kind) noexcept;
ActivationKind parse_activation_kind(const std::string& name);

/// Admissible simultaneous-transmission sets.
///
/// `wired` is symbolic (every subset of E is admissible, so E itself
/// dominates). The other kinds carry their members explicitly; each member
/// is a sorted edge-id list. Materialized matchings are stored in
/// lexicographic order so "smallest index" and "lexicographically smallest
/// set" coincide as tie-break rules.
class ActivationSet {
  public:
    ActivationSet() = default;

    static ActivationSet wired(int edge_count);
    static ActivationSet primary_interference(int edge_count, std::vector<std::vector<EdgeId>> matchings);
    static ActivationSet explicit_sets(int edge_count, std::vector<std::vector<EdgeId>> members);

    ActivationKind kind() const noexcept { return kind_; }
    int edge_count() const noexcept { return edge_count_; }
    const std::vector<std::vector<EdgeId>>& members() const noexcept { return members_; }

    // Members with `wired` expanded to the single dominant member E.
    std::vector<std::vector<EdgeId>> effective_members() const;

    bool operator==(const ActivationSet&) const = default;

  private:
    ActivationSet(ActivationKind kind, int edge_count, std::vector<std::vector<EdgeId>> members);

    ActivationKind kind_ = ActivationKind::wired;
    int edge_count_ = 0;
    std::vector<std::vector<EdgeId>> members_;
};

inline constexpr int kDefaultMatchingCap = 24;

/// All maximal matchings of the underlying undirected graph, sorted
/// lexicographically. Throws CapExceededError when m > cap.
std::vector<std::vector<EdgeId>> enumerate_matchings(const Graph& g, int cap = kDefaultMatchingCap);

/// Graph plus its activation set, as stored in a topology file.
struct Topology {
    Graph graph;
    ActivationSet activation;

    bool operator==(const Topology&) const = default;
};

Topology parse_topology(const nlohmann::json& doc);
nlohmann::json topology_to_json(const Topology& topo);

Topology load_topology(const std::filesystem::path& path);
void write_topology(const Topology& topo, const std::filesystem::path& path);

}  // namespace umw
