#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "umw/topology.hpp"

namespace umw {

enum class FlowKind { unicast, broadcast, multicast, anycast };

const char* to_string(FlowKind kind) noexcept;
FlowKind parse_flow_kind(const std::string& name);

struct TrafficClass {
    int id = 0;
    FlowKind kind = FlowKind::unicast;
    NodeId source = 0;
    std::vector<NodeId> destinations;  // sorted; broadcast holds every node
    double rate = 0.0;                 // packets per slot at load factor 1

    bool operator==(const TrafficClass&) const = default;
};

/// Checks the per-kind destination rules against `g` and normalizes the
/// destination list (sorted, broadcast filled with V). Throws ValidationError.
TrafficClass normalize_class(TrafficClass cls, const Graph& g);

enum class ArrivalKind { bernoulli, binomial, poisson };

const char* to_string(ArrivalKind kind) noexcept;
ArrivalKind parse_arrival_kind(const std::string& name);

struct ArrivalProcess {
    ArrivalKind kind = ArrivalKind::binomial;
    int trials = 4;  // binomial only

    bool operator==(const ArrivalProcess&) const = default;
};

/// Counter-based random bit source: the stream is a pure function of
/// (seed, class id, slot), so draws never depend on evaluation order.
class SlotStream {
  public:
    using result_type = std::uint64_t;

    SlotStream(std::uint64_t master_seed, int class_id, std::int64_t slot) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }
    result_type operator()() noexcept;

  private:
    std::uint64_t state_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Per-class arrival counts for slot `t`, where each class rate is
/// scaled by `load_factor`. Throws ValidationError for a Bernoulli rate
/// above 1 or a binomial mean above the trial count.
std::vector<std::int64_t> generate_arrivals(std::span<const TrafficClass> classes, const ArrivalProcess& process,
                                            double load_factor, std::int64_t t, std::uint64_t master_seed);

/// Per-slot bound on total arrivals, or nullopt when unbounded (Poisson).
std::optional<std::int64_t> effective_amax(std::span<const TrafficClass> classes, const ArrivalProcess& process);

}  // namespace umw
