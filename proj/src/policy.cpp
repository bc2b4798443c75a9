#include "umw/policy.hpp"

#include "umw/error.hpp"

namespace umw {

const char* to_string(PolicyKind kind) noexcept {
    switch (kind) {
        case PolicyKind::umw:
            return "umw";
        case PolicyKind::umw_heuristic:
            return "umw-heuristic";
        case PolicyKind::bp:
            return "bp";
    }
    return "?";
}

PolicyKind parse_policy(const std::string& name) {
    if (name == "umw") return PolicyKind::umw;
    if (name == "umw-heuristic") return PolicyKind::umw_heuristic;
    if (name == "bp") return PolicyKind::bp;
    throw ParseError("unknown policy '" + name + "' (expected umw, umw-heuristic or bp)");
}

PolicyDecision decide_with_weights(const EdgeWeights& w, std::span<const std::int64_t> arrivals, const Graph& g,
                                   const ActivationSet& aset, std::span<const TrafficClass> classes,
                                   const RoutingOptions& opts) {
    if (arrivals.size() != classes.size()) {
        throw ValidationError("arrival counts do not match the class list");
    }
    PolicyDecision d;
    d.routes.resize(classes.size());
    for (std::size_t c = 0; c < classes.size(); ++c) {
        if (arrivals[c] > 0) d.routes[c] = solve_route(g, w, classes[c], opts);
    }
    d.activation = max_weight_activation(aset, w);
    return d;
}

PolicyDecision umw_decide(const VirtualQueues& vq, std::span<const std::int64_t> arrivals, const Graph& g,
                          const ActivationSet& aset, std::span<const TrafficClass> classes,
                          const RoutingOptions& opts) {
    return decide_with_weights(EdgeWeights::from_counts(vq.lengths()), arrivals, g, aset, classes, opts);
}

PolicyDecision umw_heuristic_decide(std::span<const std::int64_t> physical_queues,
                                    std::span<const std::int64_t> arrivals, const Graph& g, const ActivationSet& aset,
                                    std::span<const TrafficClass> classes, const RoutingOptions& opts) {
    return decide_with_weights(EdgeWeights::from_counts(physical_queues), arrivals, g, aset, classes, opts);
}

BPState::BPState(int node_count, int class_count)
    : nodes_(node_count),
      classes_(class_count),
      queues_(static_cast<std::size_t>(node_count) * static_cast<std::size_t>(class_count)) {}

std::deque<BPPacket>& BPState::queue(NodeId v, int class_index) {
    return queues_.at(static_cast<std::size_t>(v) * static_cast<std::size_t>(classes_) +
                      static_cast<std::size_t>(class_index));
}

const std::deque<BPPacket>& BPState::queue(NodeId v, int class_index) const {
    return queues_.at(static_cast<std::size_t>(v) * static_cast<std::size_t>(classes_) +
                      static_cast<std::size_t>(class_index));
}

std::int64_t BPState::backlog(NodeId v, int class_index) const {
    return static_cast<std::int64_t>(queue(v, class_index).size());
}

std::int64_t BPState::class_total(int class_index) const {
    std::int64_t total = 0;
    for (int v = 0; v < nodes_; ++v) total += backlog(v, class_index);
    return total;
}

void BPState::push(NodeId v, int class_index, BPPacket p) {
    queue(v, class_index).push_back(p);
    ++total_;
}

BPPacket BPState::pop(NodeId v, int class_index) {
    auto& q = queue(v, class_index);
    if (q.empty()) {
        throw Error("pop from an empty back-pressure queue");
    }
    BPPacket p = q.front();
    q.pop_front();
    --total_;
    return p;
}

BPDecision bp_decide(const BPState& bp, const Graph& g, const ActivationSet& aset,
                     std::span<const TrafficClass> classes) {
    for (const TrafficClass& cls : classes) {
        if (cls.kind != FlowKind::unicast) {
            throw ValidationError("back-pressure supports unicast classes only (class " + std::to_string(cls.id) +
                                  " is " + to_string(cls.kind) + ")");
        }
    }
    const int m = g.edge_count();
    std::vector<double> weight(static_cast<std::size_t>(m), 0.0);
    std::vector<std::optional<BPTransfer>> best(static_cast<std::size_t>(m));
    for (const Edge& e : g.edges()) {
        std::int64_t top = 0;
        for (int dir = 0; dir < (g.directed() ? 1 : 2); ++dir) {
            const NodeId from = dir == 0 ? e.u : e.v;
            const NodeId to = dir == 0 ? e.v : e.u;
            for (std::size_t c = 0; c < classes.size(); ++c) {
                const int ci = static_cast<int>(c);
                const std::int64_t here = bp.backlog(from, ci);
                const std::int64_t there = to == classes[c].destinations.front() ? 0 : bp.backlog(to, ci);
                const std::int64_t diff = here - there;
                if (diff > top) {
                    top = diff;
                    best[static_cast<std::size_t>(e.id)] = BPTransfer{e.id, from, to, ci};
                }
            }
        }
        weight[static_cast<std::size_t>(e.id)] = static_cast<double>(top);
    }
    BPDecision d;
    d.activation = max_weight_activation(aset, EdgeWeights(std::move(weight)));
    for (EdgeId e : d.activation.active) {
        if (best[static_cast<std::size_t>(e)]) d.transfers.push_back(*best[static_cast<std::size_t>(e)]);
    }
    return d;
}

std::vector<BPMove> bp_forward(BPState& bp, const BPDecision& decision) {
    std::vector<BPMove> moves;
    moves.reserve(decision.transfers.size());
    for (const BPTransfer& t : decision.transfers) {
        if (bp.backlog(t.from, t.class_index) == 0) continue;
        moves.push_back(BPMove{t, bp.pop(t.from, t.class_index)});
    }
    return moves;
}

std::vector<BPDelivery> bp_absorb(BPState& bp, std::span<const TrafficClass> classes, std::span<const BPMove> moves,
                                  std::span<const BPArrival> arrivals) {
    std::vector<BPDelivery> delivered;
    for (const BPMove& mv : moves) {
        const int c = mv.transfer.class_index;
        const NodeId dest = classes[static_cast<std::size_t>(c)].destinations.front();
        if (mv.transfer.to == dest) {
            delivered.push_back(BPDelivery{c, mv.packet, dest});
        } else {
            bp.push(mv.transfer.to, c, mv.packet);
        }
    }
    for (const BPArrival& a : arrivals) {
        const TrafficClass& cls = classes[static_cast<std::size_t>(a.class_index)];
        if (cls.source == cls.destinations.front()) {
            delivered.push_back(BPDelivery{a.class_index, a.packet, cls.source});
        } else {
            bp.push(cls.source, a.class_index, a.packet);
        }
    }
    return delivered;
}

}  // namespace umw
