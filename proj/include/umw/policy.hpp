#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "umw/activation.hpp"
#include "umw/routing.hpp"
#include "umw/topology.hpp"
#include "umw/traffic.hpp"
#include "umw/virtual_net.hpp"

namespace umw {

enum class PolicyKind { umw, umw_heuristic, bp };

const char* to_string(PolicyKind kind) noexcept;
PolicyKind parse_policy(const std::string& name);

struct PolicyDecision {
    std::vector<std::optional<RouteTree>> routes;  // per class index; empty when no arrivals
    ActivationVector activation;
};

/// Routes for arriving classes plus max-weight activation, both weighted by
/// the virtual queues. The physical network is not an input.
PolicyDecision umw_decide(const VirtualQueues& vq, std::span<const std::int64_t> arrivals, const Graph& g,
                          const ActivationSet& aset, std::span<const TrafficClass> classes,
                          const RoutingOptions& opts = {});

/// Same decision rule with physical queue lengths as the weights.
PolicyDecision umw_heuristic_decide(std::span<const std::int64_t> physical_queues,
                                    std::span<const std::int64_t> arrivals, const Graph& g, const ActivationSet& aset,
                                    std::span<const TrafficClass> classes, const RoutingOptions& opts = {});

PolicyDecision decide_with_weights(const EdgeWeights& w, std::span<const std::int64_t> arrivals, const Graph& g,
                                   const ActivationSet& aset, std::span<const TrafficClass> classes,
                                   const RoutingOptions& opts);

struct BPPacket {
    std::uint64_t uid = 0;
    std::int64_t arrival_slot = 0;
};

/// Per-node, per-class FIFO backlogs for the Back-Pressure baseline.
/// Destination backlogs are identically zero: packets leave on arrival.
class BPState {
  public:
    BPState() = default;
    BPState(int node_count, int class_count);

    std::int64_t backlog(NodeId v, int class_index) const;
    std::int64_t total() const noexcept { return total_; }
    std::int64_t class_total(int class_index) const;

    std::deque<BPPacket>& queue(NodeId v, int class_index);
    const std::deque<BPPacket>& queue(NodeId v, int class_index) const;
    void push(NodeId v, int class_index, BPPacket p);
    BPPacket pop(NodeId v, int class_index);

    int node_count() const noexcept { return nodes_; }
    int class_count() const noexcept { return classes_; }

  private:
    int nodes_ = 0;
    int classes_ = 0;
    std::vector<std::deque<BPPacket>> queues_;  // [node * classes + class]
    std::int64_t total_ = 0;
};

struct BPTransfer {
    EdgeId edge = 0;
    NodeId from = 0;
    NodeId to = 0;
    int class_index = 0;
};

struct BPDecision {
    ActivationVector activation;
    std::vector<BPTransfer> transfers;  // one per active edge with positive differential
};

/// w_e = max_c (Q_u^c - Q_v^c)^+ over the allowed directions of e;
/// activation is max-weight over the activation set.
BPDecision bp_decide(const BPState& bp, const Graph& g, const ActivationSet& aset,
                     std::span<const TrafficClass> classes);

struct BPMove {
    BPTransfer transfer;
    BPPacket packet;
};

/// Removes the head-of-line packet for every transfer whose sender still
/// has one. Senders that ran dry leave the edge idle.
std::vector<BPMove> bp_forward(BPState& bp, const BPDecision& decision);

struct BPArrival {
    int class_index = 0;
    BPPacket packet;
};

struct BPDelivery {
    int class_index = 0;
    BPPacket packet;
    NodeId node = 0;
};

/// Applies in-flight moves (absorbed at their destination, else queued at
/// the receiver) and fresh arrivals at the sources. Returns deliveries.
std::vector<BPDelivery> bp_absorb(BPState& bp, std::span<const TrafficClass> classes, std::span<const BPMove> moves,
                                  std::span<const BPArrival> arrivals);

}  // namespace umw
