#include <doctest.h>

#include "umw/error.hpp"
#include "umw/policy.hpp"
#include "umw/testbed.hpp"

using namespace umw;

namespace {

const Graph square(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, false);
const Graph line3(3, {{0, 1}, {1, 2}}, false);

VirtualQueues loaded(int m, std::vector<std::int64_t> a) {
    VirtualQueues q(m);
    q.lindley_update(a, ActivationVector{});
    return q;
}

}  // namespace

TEST_CASE("policy names") {
    CHECK(parse_policy("umw") == PolicyKind::umw);
    CHECK(parse_policy("umw-heuristic") == PolicyKind::umw_heuristic);
    CHECK(parse_policy("bp") == PolicyKind::bp);
    CHECK(std::string(to_string(PolicyKind::umw_heuristic)) == "umw-heuristic");
    CHECK_THROWS_AS(parse_policy("fifo"), ParseError);
}

TEST_CASE("zero virtual queues give tie-break routes") {
    const std::vector<TrafficClass> classes{{0, FlowKind::unicast, 0, {2}, 1.0}};
    const auto aset = ActivationSet::primary_interference(4, enumerate_matchings(square));
    const std::int64_t arrivals[] = {1};
    const auto d = umw_decide(VirtualQueues(4), arrivals, square, aset, classes);
    REQUIRE(d.routes[0].has_value());
    CHECK(d.routes[0]->edge_ids() == std::vector<EdgeId>{0, 1});
    CHECK(d.activation.active == std::vector<EdgeId>{0, 2});
}

TEST_CASE("routes avoid loaded virtual queues") {
    const std::vector<TrafficClass> classes{{0, FlowKind::unicast, 0, {2}, 1.0}};
    const auto aset = ActivationSet::wired(4);
    const std::int64_t arrivals[] = {1};
    const auto d = umw_decide(loaded(4, {3, 3, 0, 0}), arrivals, square, aset, classes);
    REQUIRE(d.routes[0].has_value());
    CHECK(d.routes[0]->edge_ids() == std::vector<EdgeId>{2, 3});
}

TEST_CASE("classes without arrivals get no route") {
    const std::vector<TrafficClass> classes{{0, FlowKind::unicast, 0, {2}, 1.0}, {1, FlowKind::unicast, 2, {0}, 1.0}};
    const std::int64_t arrivals[] = {0, 2};
    const auto d = umw_decide(VirtualQueues(2), arrivals, line3, ActivationSet::wired(2), classes);
    CHECK_FALSE(d.routes[0].has_value());
    CHECK(d.routes[1].has_value());
}

TEST_CASE("broadcast on line3 uses both edges whatever the weights") {
    const std::vector<TrafficClass> classes{{0, FlowKind::broadcast, 0, {0, 1, 2}, 1.0}};
    const std::int64_t arrivals[] = {1};
    const auto d = umw_decide(loaded(2, {9, 1}), arrivals, line3, ActivationSet::wired(2), classes);
    CHECK(d.routes[0]->edge_ids() == std::vector<EdgeId>{0, 1});
    CHECK(d.activation.active == std::vector<EdgeId>{0, 1});
}

TEST_CASE("heuristic uses physical queues") {
    const std::vector<TrafficClass> classes{{0, FlowKind::unicast, 0, {2}, 1.0}};
    const auto aset = ActivationSet::primary_interference(4, enumerate_matchings(square));
    const std::int64_t arrivals[] = {1};
    const std::int64_t empty[] = {0, 0, 0, 0};
    CHECK(umw_heuristic_decide(empty, arrivals, square, aset, classes).routes ==
          umw_decide(VirtualQueues(4), arrivals, square, aset, classes).routes);

    const std::int64_t congested[] = {0, 5, 0, 0};
    const auto d = umw_heuristic_decide(congested, arrivals, square, aset, classes);
    CHECK(d.routes[0]->edge_ids() == std::vector<EdgeId>{2, 3});
    CHECK(d.activation.active == std::vector<EdgeId>{1, 3});
}

TEST_CASE("back-pressure decisions") {
    const Graph lone(2, {{0, 1}}, true);
    const std::vector<TrafficClass> classes{{0, FlowKind::unicast, 0, {1}, 1.0}};
    BPState bp(2, 1);
    const auto idle = bp_decide(bp, lone, ActivationSet::wired(1), classes);
    CHECK(idle.transfers.empty());

    for (int i = 0; i < 3; ++i) bp.push(0, 0, BPPacket{static_cast<std::uint64_t>(i), 0});
    const auto d = bp_decide(bp, lone, ActivationSet::wired(1), classes);
    REQUIRE(d.transfers.size() == 1);
    CHECK(d.transfers[0].class_index == 0);
    const auto moves = bp_forward(bp, d);
    REQUIRE(moves.size() == 1);
    CHECK(moves[0].packet.uid == 0);  // FIFO head
    const auto done = bp_absorb(bp, classes, moves, {});
    REQUIRE(done.size() == 1);
    CHECK(done[0].node == 1);
    CHECK(bp.backlog(1, 0) == 0);  // the destination never holds packets
    CHECK(bp.backlog(0, 0) == 2);
}

TEST_CASE("back-pressure weight is the backlog differential") {
    // 0 -> 1 -> 2 with class 0->2; backlog 3 at node 0 and 1 at node 1.
    const Graph dag(3, {{0, 1}, {1, 2}}, true);
    const std::vector<TrafficClass> classes{{0, FlowKind::unicast, 0, {2}, 1.0}};
    BPState bp(3, 1);
    for (int i = 0; i < 3; ++i) bp.push(0, 0, BPPacket{static_cast<std::uint64_t>(i), 0});
    bp.push(1, 0, BPPacket{9, 0});
    // Only one edge may transmit: weights 2 (edge 0) and 1 (edge 1).
    const auto aset = ActivationSet::explicit_sets(2, {{0}, {1}});
    const auto d = bp_decide(bp, dag, aset, classes);
    CHECK(d.activation.active == std::vector<EdgeId>{0});
    CHECK(d.transfers.size() == 1);
}

TEST_CASE("back-pressure on undirected edges picks the downhill direction") {
    const std::vector<TrafficClass> classes{{0, FlowKind::unicast, 2, {0}, 1.0}};
    BPState bp(3, 1);
    bp.push(2, 0, BPPacket{1, 0});
    bp.push(2, 0, BPPacket{2, 0});
    const auto d = bp_decide(bp, line3, ActivationSet::wired(2), classes);
    REQUIRE(d.transfers.size() == 1);
    CHECK(d.transfers[0].from == 2);
    CHECK(d.transfers[0].to == 1);
}

TEST_CASE("back-pressure absorb and rejects non-unicast") {
    const std::vector<TrafficClass> classes{{0, FlowKind::unicast, 0, {2}, 1.0}};
    BPState bp(3, 1);
    const BPArrival a[] = {{0, BPPacket{1, 0}}};
    CHECK(bp_absorb(bp, classes, {}, a).empty());
    CHECK(bp.backlog(0, 0) == 1);
    CHECK(bp_absorb(bp, classes, {}, {}).empty());
    CHECK(bp.total() == 1);

    const std::vector<TrafficClass> bc{{0, FlowKind::broadcast, 0, {0, 1, 2}, 1.0}};
    CHECK_THROWS_AS(bp_decide(BPState(3, 1), line3, ActivationSet::wired(2), bc), ValidationError);
}
