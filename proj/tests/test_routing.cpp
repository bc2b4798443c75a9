#include <doctest.h>

#include <random>

#include "support.hpp"
#include "umw/capacity.hpp"
#include "umw/error.hpp"
#include "umw/routing.hpp"

using namespace umw;

namespace {

const Graph line3(3, {{0, 1}, {1, 2}}, false);
const Graph square(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, false);
const Graph triangle(3, {{0, 1}, {1, 2}, {2, 0}}, false);

EdgeWeights W(std::vector<double> w) { return EdgeWeights(std::move(w)); }

double brute_min(const Graph& g, const EdgeWeights& w, const TrafficClass& cls) {
    CatalogCaps caps;
    caps.max_paths = 1000000;
    const auto routes = enumerate_routes(g, cls, caps);
    REQUIRE_FALSE(routes.empty());
    double best = route_cost(routes.front(), w);
    for (const auto& r : routes) best = std::min(best, route_cost(r, w));
    return best;
}

bool reachable_all(const Graph& g, NodeId root, const std::vector<NodeId>& targets) {
    std::vector<char> seen(static_cast<std::size_t>(g.node_count()), 0);
    std::vector<NodeId> stack{root};
    seen[static_cast<std::size_t>(root)] = 1;
    while (!stack.empty()) {
        const NodeId v = stack.back();
        stack.pop_back();
        for (const Arc& a : g.out_arcs(v)) {
            if (!seen[static_cast<std::size_t>(a.to)]) {
                seen[static_cast<std::size_t>(a.to)] = 1;
                stack.push_back(a.to);
            }
        }
    }
    for (NodeId t : targets)
        if (!seen[static_cast<std::size_t>(t)]) return false;
    return true;
}

}  // namespace

TEST_CASE("edge weights reject negatives") {
    CHECK_THROWS_AS(W({1.0, -1.0}), ValidationError);
    const std::int64_t counts[] = {3, 0, 2};
    CHECK(EdgeWeights::from_counts(counts).values()[2] == 2.0);
    CHECK_THROWS_AS(shortest_path_route(line3, W({1.0}), 0, 2), ValidationError);
}

TEST_CASE("shortest path examples") {
    const RouteTree p = shortest_path_route(line3, W({0, 0}), 0, 2);
    CHECK(p.edge_ids() == std::vector<EdgeId>{0, 1});
    CHECK(route_cost(p, W({0, 0})) == 0.0);
    CHECK(p.covered == std::vector<NodeId>{2});

    const RouteTree q = shortest_path_route(square, W({1, 1, 1, 10}), 0, 2);
    CHECK(q.edge_ids() == std::vector<EdgeId>{0, 1});
    CHECK(route_cost(q, W({1, 1, 1, 10})) == 2.0);

    const RouteTree self = shortest_path_route(line3, W({1, 1}), 1, 1);
    CHECK(self.edges.empty());
    CHECK(self.covered == std::vector<NodeId>{1});
    CHECK(route_cost(self, W({1, 1})) == 0.0);
}

TEST_CASE("shortest path ties go to fewer hops then smaller edge ids") {
    // 0-1 direct (weight 0) vs 0-2-1 (weight 0): fewer hops wins.
    const Graph g(3, {{0, 2}, {2, 1}, {0, 1}}, false);
    CHECK(shortest_path_route(g, W({0, 0, 0}), 0, 1).edge_ids() == std::vector<EdgeId>{2});
    // Two equal two-hop paths around the square: edges {0,1} beat {3,2}.
    CHECK(shortest_path_route(square, W({1, 1, 1, 1}), 0, 2).edge_ids() == std::vector<EdgeId>{0, 1});
}

TEST_CASE("unreachable targets") {
    const Graph dag(3, {{0, 1}, {2, 1}}, true);
    CHECK_THROWS_AS(shortest_path_route(dag, W({0, 0}), 0, 2), UnreachableError);
    CHECK_THROWS_AS(spanning_route(dag, W({0, 0}), 0), UnreachableError);
    const Graph split(4, {{0, 1}, {2, 3}}, false);
    CHECK_THROWS_AS(spanning_route(split, W({0, 0}), 0), UnreachableError);
    const NodeId dests[] = {2};
    CHECK_THROWS_AS(anycast_route(dag, W({0, 0}), 0, dests), UnreachableError);
    const NodeId terms[] = {1, 2};
    CHECK_THROWS_AS(steiner_route(dag, W({0, 0}), 0, terms, SteinerMode::exact), UnreachableError);
    CHECK_THROWS_AS(steiner_route(dag, W({0, 0}), 0, terms, SteinerMode::approx), UnreachableError);
}

TEST_CASE("spanning route examples") {
    const RouteTree t = spanning_route(line3, W({5, 7}), 0);
    REQUIRE(t.edges.size() == 2);
    CHECK(t.edges[0].edge == 0);
    CHECK(t.edges[0].depth == 0);
    CHECK(t.edges[1].edge == 1);
    CHECK(t.edges[1].depth == 1);
    CHECK(route_cost(t, W({2, 3})) == 5.0);

    const RouteTree tri = spanning_route(triangle, W({1, 2, 3}), 0);
    CHECK(tri.edge_ids() == std::vector<EdgeId>{0, 1});
    CHECK(route_cost(tri, W({1, 2, 3})) == 3.0);

    CHECK(spanning_route(square, W({1, 1, 1, 1}), 0).edge_ids() == std::vector<EdgeId>{0, 1, 2});
    CHECK(spanning_route(square, W({1, 1, 1, 1}), 2).edge_ids() == std::vector<EdgeId>{0, 1, 2});
}

TEST_CASE("arborescence on a digraph") {
    // 0->1 (5), 0->2 (1), 2->1 (1): arborescence {0->2, 2->1}, cost 2.
    const Graph g(3, {{0, 1}, {0, 2}, {2, 1}}, true);
    const RouteTree t = spanning_route(g, W({5, 1, 1}), 0);
    CHECK(t.edge_ids() == std::vector<EdgeId>{1, 2});
    CHECK(is_valid_route(g, t));
    // Equal weights: lexicographically smallest set {0, 1}.
    CHECK(spanning_route(g, W({1, 1, 1}), 0).edge_ids() == std::vector<EdgeId>{0, 1});
}

TEST_CASE("steiner examples") {
    // Star with centre 3, leaves 0, 1, 2.
    const Graph star(4, {{0, 3}, {3, 1}, {3, 2}}, false);
    const NodeId terms[] = {1, 2};
    for (SteinerMode mode : {SteinerMode::exact, SteinerMode::approx}) {
        const RouteTree t = steiner_route(star, W({1, 1, 1}), 0, terms, mode);
        CHECK(t.edge_ids() == std::vector<EdgeId>{0, 1, 2});
        CHECK(route_cost(t, W({1, 1, 1})) == 3.0);
        CHECK(t.covered == std::vector<NodeId>{1, 2});
    }

    const auto w = W({3, 1, 4, 2});
    const NodeId every[] = {0, 1, 2, 3};
    CHECK(route_cost(steiner_route(square, w, 0, every, SteinerMode::exact), w) ==
          route_cost(spanning_route(square, w, 0), w));
    const NodeId single[] = {2};
    CHECK(route_cost(steiner_route(square, w, 0, single, SteinerMode::exact), w) ==
          route_cost(shortest_path_route(square, w, 0, 2), w));

    const NodeId self[] = {0};
    CHECK(steiner_route(square, w, 0, self, SteinerMode::exact).edges.empty());
}

TEST_CASE("exact steiner terminal cap") {
    const Graph g = Graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}, false);
    const NodeId terms[] = {1, 2, 3, 4};
    try {
        (void)steiner_route(g, EdgeWeights::zeros(4), 0, terms, SteinerMode::exact, 3);
        FAIL("expected cap error");
    } catch (const CapExceededError& ex) {
        CHECK(ex.cap() == 3);
    }
    // solve_route falls back to the approximation above the cap.
    const TrafficClass cls{0, FlowKind::multicast, 0, {1, 2, 3}, 1.0};
    RoutingOptions opts;
    opts.steiner_cap = 2;
    CHECK(solve_route(g, EdgeWeights::zeros(4), cls, opts).edge_ids() == std::vector<EdgeId>{0, 1, 2});
}

TEST_CASE("anycast examples") {
    const NodeId two[] = {1, 2};
    const RouteTree t = anycast_route(line3, W({1, 1}), 0, two);
    CHECK(t.covered == std::vector<NodeId>{1});
    CHECK(route_cost(t, W({1, 1})) == 1.0);

    const NodeId one[] = {2};
    CHECK(anycast_route(square, W({1, 2, 3, 4}), 0, one) == shortest_path_route(square, W({1, 2, 3, 4}), 0, 2));

    // Nodes 1 and 3 are both one unit from 0: the smaller id wins.
    const NodeId tie[] = {3, 1};
    CHECK(anycast_route(square, W({1, 1, 1, 1}), 0, tie).covered == std::vector<NodeId>{1});
}

TEST_CASE("route cost") {
    CHECK(route_cost(RouteTree{}, W({1, 2})) == 0.0);
    CHECK(route_cost(spanning_route(line3, W({0, 0}), 0), W({2, 3})) == 5.0);
    CHECK(route_cost(spanning_route(square, W({0, 0, 0, 0}), 0), EdgeWeights::zeros(4)) == 0.0);
}

TEST_CASE("orient_tree validates structure") {
    const EdgeId cyc[] = {0, 1, 2};
    CHECK_THROWS_AS(orient_tree(triangle, 0, cyc, {1}), ValidationError);
    const EdgeId rep[] = {0, 0};
    CHECK_THROWS_AS(orient_tree(line3, 0, rep, {1}), ValidationError);
    const EdgeId far[] = {1};
    CHECK_THROWS_AS(orient_tree(line3, 0, far, {2}), ValidationError);
    const EdgeId ok[] = {1, 0};
    const RouteTree t = orient_tree(line3, 0, ok, {2});
    CHECK(is_valid_route(line3, t));
    CHECK(t.contains(1));
    CHECK_FALSE(try_orient_tree(line3, 0, far, {2}).has_value());
    const Graph backwards(2, {{1, 0}}, true);
    const EdgeId e0[] = {0};
    CHECK_FALSE(try_orient_tree(backwards, 0, e0, {1}).has_value());
}

TEST_CASE("solvers match brute force on random graphs") {
    std::mt19937_64 rng(2024);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 3 + trial % 4;
        const bool directed = trial % 3 == 0;
        const Graph g = testing::random_graph(rng, n, 12, directed);
        const EdgeWeights w(testing::random_weights(rng, g.edge_count()));
        const NodeId s = std::uniform_int_distribution<int>(0, n - 1)(rng);
        std::vector<NodeId> all(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) all[static_cast<std::size_t>(v)] = v;

        for (NodeId t = 0; t < n; ++t) {
            if (t == s) continue;
            const TrafficClass uni{0, FlowKind::unicast, s, {t}, 1.0};
            if (!reachable_all(g, s, {t})) {
                CHECK_THROWS_AS(shortest_path_route(g, w, s, t), UnreachableError);
                continue;
            }
            const RouteTree r = shortest_path_route(g, w, s, t);
            CHECK(is_valid_route(g, r));
            CHECK(route_cost(r, w) == brute_min(g, w, uni));
            ++checked;
        }

        if (reachable_all(g, s, all)) {
            const TrafficClass bc{0, FlowKind::broadcast, s, all, 1.0};
            const RouteTree r = spanning_route(g, w, s);
            CHECK(is_valid_route(g, r));
            CHECK(r.edges.size() == static_cast<std::size_t>(n - 1));
            CHECK(route_cost(r, w) == brute_min(g, w, bc));
            ++checked;
        }

        std::vector<NodeId> others;
        for (NodeId v = 0; v < n; ++v)
            if (v != s && reachable_all(g, s, {v})) others.push_back(v);
        std::shuffle(others.begin(), others.end(), rng);
        if (others.size() >= 2) {
            std::vector<NodeId> terms(others.begin(), others.begin() + 2 + static_cast<long>(trial % 2 && others.size() > 2));
            std::sort(terms.begin(), terms.end());
            const TrafficClass mc{0, FlowKind::multicast, s, terms, 1.0};
            const double opt = brute_min(g, w, mc);
            const RouteTree ex = steiner_route(g, w, s, terms, SteinerMode::exact);
            const RouteTree ap = steiner_route(g, w, s, terms, SteinerMode::approx);
            CHECK(is_valid_route(g, ex));
            CHECK(is_valid_route(g, ap));
            CHECK(ex.covered == terms);
            CHECK(route_cost(ex, w) == opt);
            CHECK(route_cost(ap, w) <= 2.0 * opt);

            const TrafficClass ac{0, FlowKind::anycast, s, terms, 1.0};
            const RouteTree a = anycast_route(g, w, s, terms);
            CHECK(route_cost(a, w) == brute_min(g, w, ac));
            ++checked;
        }
    }
    CHECK(checked > 400);
}

TEST_CASE("solve_route dispatch") {
    const TrafficClass bc{0, FlowKind::broadcast, 0, {0, 1, 2}, 1.0};
    CHECK(solve_route(line3, W({4, 4}), bc, {}).edge_ids() == std::vector<EdgeId>{0, 1});
    const TrafficClass uni{0, FlowKind::unicast, 2, {0}, 1.0};
    CHECK(solve_route(line3, W({4, 4}), uni, {}).root == 2);
}
