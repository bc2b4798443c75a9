#include <doctest.h>

#include <random>

#include "umw/virtual_net.hpp"

using namespace umw;

namespace {

ActivationVector mu_of(std::vector<EdgeId> active) { return ActivationVector{std::move(active)}; }

RouteTree tree_over(std::vector<EdgeId> ids) {
    RouteTree t;
    int depth = 0;
    for (EdgeId e : ids) t.edges.push_back(TreeEdge{e, depth, depth + 1, depth}), ++depth;
    return t;
}

}  // namespace

TEST_CASE("virtual arrival vector") {
    CHECK(virtual_arrival_vector(3, {}) == std::vector<std::int64_t>{0, 0, 0});

    const RouteTree r01 = tree_over({0, 1});
    const RouteLoad one[] = {{&r01, 2}};
    CHECK(virtual_arrival_vector(4, one) == std::vector<std::int64_t>{2, 2, 0, 0});

    const RouteTree r0 = tree_over({0});
    const RouteTree r02 = tree_over({0, 2});
    const RouteLoad two[] = {{&r0, 1}, {&r02, 1}};
    const auto a = virtual_arrival_vector(3, two);
    CHECK(a[0] == 2);
    CHECK(a[1] == 0);
    CHECK(a[2] == 1);
}

TEST_CASE("lindley update") {
    VirtualQueues q(1);
    const std::int64_t zero[] = {0};
    q.lindley_update(zero, mu_of({0}));
    CHECK(q.lengths()[0] == 0);
    CHECK(q.cum_service()[0] == 1);  // allocated service counts even when idle

    VirtualQueues r(1);
    const std::int64_t three[] = {3};
    r.lindley_update(three, mu_of({}));
    const std::int64_t two[] = {2};
    r.lindley_update(two, mu_of({0}));
    CHECK(r.lengths()[0] == 4);
    CHECK(r.cum_arrivals()[0] == 5);
    CHECK(r.slot() == 2);

    VirtualQueues s(1);
    const std::int64_t one[] = {1};
    s.lindley_update(one, mu_of({}));
    s.lindley_update(zero, mu_of({0}));
    CHECK(s.lengths()[0] == 0);
    s.lindley_update(zero, mu_of({0}));
    CHECK(s.lengths()[0] == 0);
}

TEST_CASE("queue totals") {
    VirtualQueues q(3);
    const std::int64_t a[] = {1, 4, 2};
    q.lindley_update(a, mu_of({1}));
    CHECK(q.total() == 6);
    CHECK(q.max() == 3);
}

TEST_CASE("skorokhod value examples") {
    ArrivalServiceHistory zero(1);
    const std::int64_t z[] = {0};
    for (int i = 0; i < 5; ++i) zero.record(z, mu_of({}));
    CHECK(skorokhod_value(zero, 0, 5) == 0);

    ArrivalServiceHistory h(1);
    const std::int64_t two[] = {2};
    h.record(two, mu_of({0}));
    h.record(z, mu_of({0}));
    CHECK(skorokhod_value(h, 0, 1) == 1);
    CHECK(skorokhod_value(h, 0, 2) == 0);

    ArrivalServiceHistory acc(1);
    const std::int64_t one[] = {1};
    for (int i = 0; i < 3; ++i) acc.record(one, mu_of({}));
    CHECK(skorokhod_value(acc, 0, 3) == 3);
}

TEST_CASE("associated recursion examples") {
    AssociatedQueues a(1);
    const std::int64_t z[] = {0};
    a.update(z, mu_of({0}));
    CHECK(a.lengths()[0] == 0);

    AssociatedQueues b(1);
    VirtualQueues q(1);
    const std::int64_t two[] = {2};
    b.update(two, mu_of({0}));
    q.lindley_update(two, mu_of({0}));
    CHECK(b.lengths()[0] == 2);
    CHECK(q.lengths()[0] == 1);

    AssociatedQueues c(std::vector<std::int64_t>{5});
    const std::int64_t one[] = {1};
    c.update(one, ActivationVector{{0}});
    // Unit service per slot: (5 - 1)^+ + 1.
    CHECK(c.lengths()[0] == 5);
}

TEST_CASE("loading slack") {
    ArrivalServiceHistory h(1);
    const std::int64_t z[] = {0};
    h.record(z, mu_of({}));
    CHECK(loading_slack(h, 0, 0, 1) == 0);

    ArrivalServiceHistory g(1);
    const std::int64_t a[][1] = {{2}, {0}, {3}};
    const std::vector<EdgeId> serve[] = {{0}, {0}, {0}};
    for (int i = 0; i < 3; ++i) g.record(a[i], ActivationVector{serve[i]});
    CHECK(loading_slack(g, 0, 0, 3) == 2);  // 5 arrivals, 3 services
}

TEST_CASE("lindley state matches the closed form on random histories") {
    std::mt19937_64 rng(11);
    const int m = 4;
    const std::int64_t amax = 3;
    for (int run = 0; run < 20; ++run) {
        VirtualQueues q(m);
        AssociatedQueues hat(m);
        ArrivalServiceHistory hist(m);
        SkorokhodMonitor mon(m);
        std::vector<std::int64_t> running_max(m, 0);
        for (int t = 1; t <= 300; ++t) {
            std::vector<std::int64_t> a(m);
            for (auto& x : a) x = static_cast<std::int64_t>(rng() % 2);
            // At most amax arrivals per edge per slot.
            a[static_cast<std::size_t>(rng() % m)] += static_cast<std::int64_t>(rng() % amax);
            std::vector<EdgeId> active;
            for (EdgeId e = 0; e < m; ++e)
                if (rng() % 3 != 0) active.push_back(e);
            const ActivationVector mu{active};
            q.lindley_update(a, mu);
            hat.update(a, mu);
            hist.record(a, mu);
            mon.observe(a, mu);
            for (EdgeId e = 0; e < m; ++e) {
                const auto i = static_cast<std::size_t>(e);
                running_max[i] = std::max(running_max[i], q.lengths()[i]);
                CHECK(q.lengths()[i] == skorokhod_value(hist, e, t));
                CHECK(q.lengths()[i] == mon.value(e));
                CHECK(hat.lengths()[i] >= q.lengths()[i]);
                CHECK(hat.lengths()[i] <= q.lengths()[i] + amax);
                CHECK(mon.max_window_slack(e) <= running_max[i]);
                if (t % 37 == 0) {
                    for (int t0 = 0; t0 < t; t0 += 13) CHECK(loading_slack(hist, e, t0, t) <= running_max[i]);
                }
            }
        }
    }
}
