#include "umw/traffic.hpp"

#include <algorithm>
#include <random>

#include "umw/error.hpp"

namespace umw {

const char* to_string(FlowKind kind) noexcept {
    switch (kind) {
        case FlowKind::unicast:
            return "unicast";
        case FlowKind::broadcast:
            return "broadcast";
        case FlowKind::multicast:
            return "multicast";
        case FlowKind::anycast:
            return "anycast";
    }
    return "?";
}

FlowKind parse_flow_kind(const std::string& name) {
    if (name == "unicast") return FlowKind::unicast;
    if (name == "broadcast") return FlowKind::broadcast;
    if (name == "multicast") return FlowKind::multicast;
    if (name == "anycast") return FlowKind::anycast;
    throw ParseError("unknown flow kind '" + name + "'");
}

TrafficClass normalize_class(TrafficClass cls, const Graph& g) {
    const int n = g.node_count();
    const std::string label = "class " + std::to_string(cls.id);
    if (cls.source < 0 || cls.source >= n) {
        throw ValidationError(label + ": source out of range");
    }
    if (!(cls.rate >= 0.0)) {
        throw ValidationError(label + ": rate must be nonnegative");
    }
    if (cls.kind == FlowKind::broadcast) {
        cls.destinations.resize(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) cls.destinations[static_cast<std::size_t>(v)] = v;
        return cls;
    }
    std::sort(cls.destinations.begin(), cls.destinations.end());
    cls.destinations.erase(std::unique(cls.destinations.begin(), cls.destinations.end()), cls.destinations.end());
    for (NodeId d : cls.destinations) {
        if (d < 0 || d >= n) {
            throw ValidationError(label + ": destination out of range");
        }
    }
    switch (cls.kind) {
        case FlowKind::unicast:
            if (cls.destinations.size() != 1) {
                throw ValidationError(label + ": unicast needs exactly one destination");
            }
            break;
        case FlowKind::multicast:
            if (cls.destinations.size() < 2 || static_cast<int>(cls.destinations.size()) >= n) {
                throw ValidationError(label + ": multicast destinations must be a proper subset of size >= 2");
            }
            break;
        case FlowKind::anycast:
            if (cls.destinations.empty()) {
                throw ValidationError(label + ": anycast needs at least one destination");
            }
            break;
        case FlowKind::broadcast:
            break;
    }
    return cls;
}

const char* to_string(ArrivalKind kind) noexcept {
    switch (kind) {
        case ArrivalKind::bernoulli:
            return "bernoulli";
        case ArrivalKind::binomial:
            return "binomial";
        case ArrivalKind::poisson:
            return "poisson";
    }
    return "?";
}

ArrivalKind parse_arrival_kind(const std::string& name) {
    if (name == "bernoulli") return ArrivalKind::bernoulli;
    if (name == "binomial") return ArrivalKind::binomial;
    if (name == "poisson") return ArrivalKind::poisson;
    throw ParseError("unknown arrival process '" + name + "'");
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

SlotStream::SlotStream(std::uint64_t master_seed, int class_id, std::int64_t slot) noexcept
    : state_(splitmix64(splitmix64(master_seed ^ splitmix64(static_cast<std::uint64_t>(class_id) + 1)) ^
                        static_cast<std::uint64_t>(slot))) {}

SlotStream::result_type SlotStream::operator()() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::vector<std::int64_t> generate_arrivals(std::span<const TrafficClass> classes, const ArrivalProcess& process,
                                            double load_factor, std::int64_t t, std::uint64_t master_seed) {
    std::vector<std::int64_t> counts(classes.size(), 0);
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const double rate = classes[i].rate * load_factor;
        if (rate <= 0.0) {
            continue;
        }
        SlotStream stream(master_seed, classes[i].id, t);
        switch (process.kind) {
            case ArrivalKind::bernoulli: {
                if (rate > 1.0) {
                    throw ValidationError("bernoulli arrivals need rate <= 1, class " +
                                          std::to_string(classes[i].id) + " has " + std::to_string(rate));
                }
                counts[i] = std::bernoulli_distribution(rate)(stream) ? 1 : 0;
                break;
            }
            case ArrivalKind::binomial: {
                if (rate > process.trials) {
                    throw ValidationError("binomial arrivals need rate <= trials, class " +
                                          std::to_string(classes[i].id) + " has " + std::to_string(rate));
                }
                counts[i] = std::binomial_distribution<std::int64_t>(process.trials, rate / process.trials)(stream);
                break;
            }
            case ArrivalKind::poisson:
                counts[i] = std::poisson_distribution<std::int64_t>(rate)(stream);
                break;
        }
    }
    return counts;
}

std::optional<std::int64_t> effective_amax(std::span<const TrafficClass> classes, const ArrivalProcess& process) {
    switch (process.kind) {
        case ArrivalKind::bernoulli:
            return static_cast<std::int64_t>(classes.size());
        case ArrivalKind::binomial:
            return static_cast<std::int64_t>(classes.size()) * process.trials;
        case ArrivalKind::poisson:
            return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace umw
