#include "umw/physical_net.hpp"

#include <algorithm>
#include <tuple>

#include "umw/error.hpp"

namespace umw {

std::shared_ptr<const CompiledRoute> CompiledRoute::compile(RouteTree tree) {
    auto out = std::make_shared<CompiledRoute>();
    const std::size_t k = tree.edges.size();
    out->children.resize(k);
    out->reaches_destination.resize(k, 0);
    auto required = [&](NodeId v) { return std::binary_search(tree.covered.begin(), tree.covered.end(), v); };
    for (std::size_t i = 0; i < k; ++i) {
        const TreeEdge& te = tree.edges[i];
        if (te.depth == 0) out->root_edges.push_back(static_cast<int>(i));
        out->reaches_destination[i] = required(te.child) ? 1 : 0;
        for (std::size_t j = 0; j < k; ++j) {
            if (tree.edges[j].parent == te.child) out->children[i].push_back(static_cast<int>(j));
        }
    }
    out->root_is_destination = required(tree.root);
    out->tree = std::move(tree);
    return out;
}

bool EdgeBuffer::Later::operator()(const PacketCopy& a, const PacketCopy& b) const noexcept {
    return std::tie(a.hops, a.arrival_slot, a.uid) > std::tie(b.hops, b.arrival_slot, b.uid);
}

PacketCopy EdgeBuffer::pop() {
    PacketCopy c = heap_.top();
    heap_.pop();
    return c;
}

PhysicalNetwork::PhysicalNetwork(int node_count, int edge_count)
    : node_count_(node_count),
      buffers_(static_cast<std::size_t>(edge_count)),
      layers_(static_cast<std::size_t>(std::max(1, node_count - 1)), 0) {}

const Packet* PhysicalNetwork::find(std::uint64_t uid) const {
    const auto it = packets_.find(uid);
    return it == packets_.end() ? nullptr : &it->second;
}

void PhysicalNetwork::enqueue(Packet& p, int tree_index) {
    const TreeEdge& te = p.route->tree.edges[static_cast<std::size_t>(tree_index)];
    buffers_.at(static_cast<std::size_t>(te.edge))
        .push(PacketCopy{p.uid, p.arrival_slot, te.depth, tree_index, te.edge});
    if (static_cast<std::size_t>(te.depth) >= layers_.size()) layers_.resize(static_cast<std::size_t>(te.depth) + 1, 0);
    ++layers_[static_cast<std::size_t>(te.depth)];
    ++p.live_copies;
    ++total_copies_;
    ++audit_.copies_created;
}

void PhysicalNetwork::deliver(Packet& p, NodeId node, std::int64_t slot, ForwardResult& out) {
    if (std::find(p.delivered.begin(), p.delivered.end(), node) != p.delivered.end()) {
        ++audit_.duplicate_deliveries;
        return;
    }
    p.delivered.push_back(node);
    out.deliveries.push_back(DeliveryEvent{p.uid, p.class_index, node, slot});
    if (!p.full_delivery_slot && p.delivered.size() == p.required().size()) {
        p.full_delivery_slot = slot;
        out.completions.push_back(CompletionEvent{p.uid, p.class_index, p.arrival_slot, slot});
    }
}

ForwardResult PhysicalNetwork::admit(Packet packet, std::int64_t slot) {
    if (!packet.route) {
        throw ValidationError("packet admitted without a route");
    }
    ForwardResult out;
    const std::uint64_t uid = packet.uid;
    auto [it, inserted] = packets_.emplace(uid, std::move(packet));
    if (!inserted) {
        throw ValidationError("duplicate packet uid " + std::to_string(uid));
    }
    Packet& p = it->second;
    p.live_copies = 0;
    if (p.route->root_is_destination) deliver(p, p.route->tree.root, slot, out);
    for (int idx : p.route->root_edges) enqueue(p, idx);
    if (p.live_copies == 0) packets_.erase(it);
    return out;
}

ForwardResult PhysicalNetwork::ento_forward(const ActivationVector& active, std::int64_t slot) {
    ForwardResult out;
    std::vector<PacketCopy> crossed;
    crossed.reserve(active.active.size());
    std::vector<char> sent(buffers_.size(), 0);
    for (EdgeId e : active.active) {
        auto& buf = buffers_.at(static_cast<std::size_t>(e));
        if (sent[static_cast<std::size_t>(e)]++) {
            ++audit_.capacity_violations;
            continue;
        }
        if (buf.empty()) {
            ++out.wasted_service;
            continue;
        }
        PacketCopy c = buf.pop();
        if (!buf.empty() && buf.top().hops < c.hops) ++audit_.ento_order_violations;
        crossed.push_back(c);
    }
    out.transmissions = static_cast<std::int64_t>(crossed.size());

    for (const PacketCopy& c : crossed) {
        --layers_[static_cast<std::size_t>(c.hops)];
        --total_copies_;
        ++audit_.copies_destroyed;
        auto it = packets_.find(c.uid);
        if (it == packets_.end()) {
            throw Error("copy of an unknown packet crossed an edge");
        }
        Packet& p = it->second;
        --p.live_copies;
        const auto ti = static_cast<std::size_t>(c.tree_index);
        if (p.route->reaches_destination[ti]) deliver(p, p.route->tree.edges[ti].child, slot, out);
        for (int child : p.route->children[ti]) enqueue(p, child);
        if (p.live_copies == 0) packets_.erase(it);
    }
    return out;
}

std::vector<std::int64_t> PhysicalNetwork::queue_lengths() const {
    std::vector<std::int64_t> q(buffers_.size());
    std::transform(buffers_.begin(), buffers_.end(), q.begin(),
                   [](const EdgeBuffer& b) { return static_cast<std::int64_t>(b.size()); });
    return q;
}

std::vector<std::int64_t> PhysicalNetwork::layer_counters() const {
    std::vector<std::int64_t> r = layers_;
    r.resize(static_cast<std::size_t>(std::max(1, node_count_ - 1)), 0);
    return r;
}

}  // namespace umw
