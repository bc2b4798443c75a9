#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <queue>
#include <unordered_map>
#include <vector>

#include "umw/activation.hpp"
#include "umw/routing.hpp"

namespace umw {

/// Route tree with the per-edge successor lists needed while forwarding.
struct CompiledRoute {
    RouteTree tree;
    std::vector<std::vector<int>> children;  // tree-edge index -> child tree-edge indices
    std::vector<int> root_edges;             // tree-edge indices at depth 0
    std::vector<char> reaches_destination;   // tree-edge index -> child node is required
    bool root_is_destination = false;

    static std::shared_ptr<const CompiledRoute> compile(RouteTree tree);
};

struct Packet {
    std::uint64_t uid = 0;
    int class_index = 0;
    std::int64_t arrival_slot = 0;
    std::shared_ptr<const CompiledRoute> route;  // frozen at admission
    std::vector<NodeId> delivered;
    std::optional<std::int64_t> full_delivery_slot;
    std::int64_t live_copies = 0;

    const std::vector<NodeId>& required() const { return route->tree.covered; }
};

struct PacketCopy {
    std::uint64_t uid = 0;
    std::int64_t arrival_slot = 0;
    int hops = 0;        // tree depth of the waiting edge
    int tree_index = 0;  // index into the route's tree edges
    EdgeId waiting_edge = 0;
};

/// Per-edge ENTO priority buffer: fewest hops first, then FIFO by arrival
/// slot, then by uid.
class EdgeBuffer {
  public:
    void push(const PacketCopy& copy) { heap_.push(copy); }
    PacketCopy pop();
    const PacketCopy& top() const { return heap_.top(); }
    bool empty() const noexcept { return heap_.empty(); }
    std::size_t size() const noexcept { return heap_.size(); }

  private:
    struct Later {
        bool operator()(const PacketCopy& a, const PacketCopy& b) const noexcept;
    };
    std::priority_queue<PacketCopy, std::vector<PacketCopy>, Later> heap_;
};

struct DeliveryEvent {
    std::uint64_t uid = 0;
    int class_index = 0;
    NodeId node = 0;
    std::int64_t slot = 0;
};

struct CompletionEvent {
    std::uint64_t uid = 0;
    int class_index = 0;
    std::int64_t arrival_slot = 0;
    std::int64_t full_delivery_slot = 0;
};

struct ForwardResult {
    std::vector<DeliveryEvent> deliveries;
    std::vector<CompletionEvent> completions;
    std::int64_t transmissions = 0;
    std::int64_t wasted_service = 0;  // active edges with an empty buffer
};

struct PhysicalAudit {
    std::int64_t copies_created = 0;
    std::int64_t copies_destroyed = 0;
    std::int64_t duplicate_deliveries = 0;
    std::int64_t ento_order_violations = 0;
    std::int64_t capacity_violations = 0;
};

/// The multi-hop packet network: copies wait at the edge they must cross
/// next and are duplicated at tree branch points.
class PhysicalNetwork {
  public:
    PhysicalNetwork() = default;
    PhysicalNetwork(int node_count, int edge_count);

    /// Places one hops-0 copy on every depth-0 edge of the packet's route.
    /// A degenerate packet whose route needs no edge completes immediately.
    ForwardResult admit(Packet packet, std::int64_t slot);

    /// One ENTO step: each active edge with a waiting copy transmits the
    /// highest-priority copy; successors are queued after all edges have
    /// transmitted, so a copy crosses at most one edge per slot.
    ForwardResult ento_forward(const ActivationVector& active, std::int64_t slot);

    std::vector<std::int64_t> queue_lengths() const;
    std::int64_t total_queue() const noexcept { return total_copies_; }

    /// R_k = copies whose waiting edge is k hops from their origin, k = 0..n-2.
    std::vector<std::int64_t> layer_counters() const;

    const PhysicalAudit& audit() const noexcept { return audit_; }
    std::size_t packets_in_flight() const noexcept { return packets_.size(); }
    const Packet* find(std::uint64_t uid) const;
    const EdgeBuffer& buffer(EdgeId e) const { return buffers_.at(static_cast<std::size_t>(e)); }

  private:
    void deliver(Packet& p, NodeId node, std::int64_t slot, ForwardResult& out);
    void enqueue(Packet& p, int tree_index);

    int node_count_ = 0;
    std::vector<EdgeBuffer> buffers_;
    std::unordered_map<std::uint64_t, Packet> packets_;
    std::vector<std::int64_t> layers_;
    std::int64_t total_copies_ = 0;
    PhysicalAudit audit_;
};

}  // namespace umw
