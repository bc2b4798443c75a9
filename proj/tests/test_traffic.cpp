#include <doctest.h>

#include "umw/error.hpp"
#include "umw/traffic.hpp"

using namespace umw;

namespace {

const Graph line3(3, {{0, 1}, {1, 2}}, false);

TrafficClass make(FlowKind kind, NodeId s, std::vector<NodeId> d, double rate = 0.5) {
    return TrafficClass{0, kind, s, std::move(d), rate};
}

double empirical_mean(const TrafficClass& cls, const ArrivalProcess& p, std::int64_t slots, std::uint64_t seed) {
    const std::vector<TrafficClass> one{cls};
    std::int64_t sum = 0;
    for (std::int64_t t = 0; t < slots; ++t) sum += generate_arrivals(one, p, 1.0, t, seed)[0];
    return static_cast<double>(sum) / static_cast<double>(slots);
}

}  // namespace

TEST_CASE("class normalization per kind") {
    CHECK(normalize_class(make(FlowKind::broadcast, 1, {}), line3).destinations == std::vector<NodeId>{0, 1, 2});
    CHECK(normalize_class(make(FlowKind::unicast, 0, {2}), line3).destinations == std::vector<NodeId>{2});
    CHECK_THROWS_AS(normalize_class(make(FlowKind::unicast, 0, {1, 2}), line3), ValidationError);
    CHECK_THROWS_AS(normalize_class(make(FlowKind::unicast, 0, {}), line3), ValidationError);
    CHECK_THROWS_AS(normalize_class(make(FlowKind::unicast, 0, {7}), line3), ValidationError);
    CHECK_THROWS_AS(normalize_class(make(FlowKind::unicast, 5, {1}), line3), ValidationError);
    CHECK_THROWS_AS(normalize_class(make(FlowKind::unicast, 0, {1}, -1.0), line3), ValidationError);

    CHECK(normalize_class(make(FlowKind::multicast, 0, {2, 1}), line3).destinations == std::vector<NodeId>{1, 2});
    CHECK_THROWS_AS(normalize_class(make(FlowKind::multicast, 0, {2}), line3), ValidationError);
    CHECK_THROWS_AS(normalize_class(make(FlowKind::multicast, 0, {0, 1, 2}), line3), ValidationError);

    CHECK(normalize_class(make(FlowKind::anycast, 0, {2, 1, 2}), line3).destinations == std::vector<NodeId>{1, 2});
    CHECK_THROWS_AS(normalize_class(make(FlowKind::anycast, 0, {}), line3), ValidationError);
}

TEST_CASE("flow and arrival kind names") {
    for (FlowKind k : {FlowKind::unicast, FlowKind::broadcast, FlowKind::multicast, FlowKind::anycast}) {
        CHECK(parse_flow_kind(to_string(k)) == k);
    }
    for (ArrivalKind k : {ArrivalKind::bernoulli, ArrivalKind::binomial, ArrivalKind::poisson}) {
        CHECK(parse_arrival_kind(to_string(k)) == k);
    }
    CHECK_THROWS_AS(parse_arrival_kind("uniform"), ParseError);
}

TEST_CASE("zero rate never arrives and unit Bernoulli always does") {
    const std::vector<TrafficClass> classes{make(FlowKind::unicast, 0, {2}, 0.0), make(FlowKind::unicast, 0, {2}, 1.0)};
    const ArrivalProcess bern{ArrivalKind::bernoulli, 1};
    for (std::int64_t t = 0; t < 1000; ++t) {
        const auto a = generate_arrivals(classes, bern, 1.0, t, 42);
        CHECK(a[0] == 0);
        CHECK(a[1] == 1);
    }
}

TEST_CASE("draws depend only on seed, class and slot") {
    std::vector<TrafficClass> classes{make(FlowKind::unicast, 0, {2}, 1.5), make(FlowKind::unicast, 0, {1}, 2.5)};
    classes[1].id = 1;
    const ArrivalProcess p{ArrivalKind::poisson, 1};
    const auto a = generate_arrivals(classes, p, 1.0, 77, 9);
    CHECK(generate_arrivals(classes, p, 1.0, 77, 9) == a);
    // Evaluating a single class on its own gives the same count.
    const std::vector<TrafficClass> second{classes[1]};
    CHECK(generate_arrivals(second, p, 1.0, 77, 9)[0] == a[1]);

    int differ = 0;
    for (std::int64_t t = 0; t < 200; ++t) {
        differ += generate_arrivals(classes, p, 1.0, t, 9) != generate_arrivals(classes, p, 1.0, t, 10);
    }
    CHECK(differ > 100);
}

TEST_CASE("empirical means match the configured rate") {
    const std::int64_t slots = 1000000;
    CHECK(empirical_mean(make(FlowKind::unicast, 0, {2}, 0.3), {ArrivalKind::bernoulli, 1}, slots, 1) ==
          doctest::Approx(0.3).epsilon(0.01));
    CHECK(empirical_mean(make(FlowKind::unicast, 0, {2}, 0.36), {ArrivalKind::binomial, 4}, slots, 2) ==
          doctest::Approx(0.36).epsilon(0.01));
    CHECK(empirical_mean(make(FlowKind::unicast, 0, {2}, 1.8), {ArrivalKind::poisson, 1}, slots, 3) ==
          doctest::Approx(1.8).epsilon(0.01));
}

TEST_CASE("binomial counts stay within the trial count") {
    const std::vector<TrafficClass> one{make(FlowKind::unicast, 0, {2}, 3.5)};
    const ArrivalProcess p{ArrivalKind::binomial, 4};
    for (std::int64_t t = 0; t < 5000; ++t) {
        const auto a = generate_arrivals(one, p, 1.0, t, 5)[0];
        CHECK(a >= 0);
        CHECK(a <= 4);
    }
}

TEST_CASE("rates beyond the process range are rejected") {
    const std::vector<TrafficClass> one{make(FlowKind::unicast, 0, {2}, 0.8)};
    CHECK_THROWS_AS(generate_arrivals(one, {ArrivalKind::bernoulli, 1}, 1.5, 0, 1), ValidationError);
    CHECK_THROWS_AS(generate_arrivals(one, {ArrivalKind::binomial, 2}, 3.0, 0, 1), ValidationError);
    CHECK_NOTHROW(generate_arrivals(one, {ArrivalKind::poisson, 1}, 10.0, 0, 1));
}

TEST_CASE("arrival bound per process") {
    const std::vector<TrafficClass> two{make(FlowKind::unicast, 0, {2}), make(FlowKind::unicast, 0, {1})};
    const std::vector<TrafficClass> one{make(FlowKind::unicast, 0, {2})};
    CHECK(effective_amax(two, {ArrivalKind::bernoulli, 1}) == 2);
    CHECK(effective_amax(one, {ArrivalKind::binomial, 4}) == 4);
    CHECK_FALSE(effective_amax(one, {ArrivalKind::poisson, 1}).has_value());
}
