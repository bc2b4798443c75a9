#include "umw/virtual_net.hpp"

#include <algorithm>
#include <numeric>

#include "umw/error.hpp"

namespace umw {

namespace {

void check_lengths(std::size_t expected, std::size_t arrivals) {
    if (arrivals != expected) {
        throw ValidationError("arrival vector length does not match the edge count");
    }
}

}  // namespace

VirtualQueues::VirtualQueues(int edge_count)
    : q_(static_cast<std::size_t>(edge_count), 0),
      cum_arrivals_(static_cast<std::size_t>(edge_count), 0),
      cum_service_(static_cast<std::size_t>(edge_count), 0) {}

void VirtualQueues::lindley_update(std::span<const std::int64_t> arrivals, const ActivationVector& mu) {
    check_lengths(q_.size(), arrivals.size());
    std::vector<char> served(q_.size(), 0);
    for (EdgeId e : mu.active) served[static_cast<std::size_t>(e)] = 1;
    for (std::size_t e = 0; e < q_.size(); ++e) {
        q_[e] = std::max<std::int64_t>(0, q_[e] + arrivals[e] - served[e]);
        cum_arrivals_[e] += arrivals[e];
        cum_service_[e] += served[e];
    }
    ++slot_;
}

std::int64_t VirtualQueues::total() const noexcept { return std::accumulate(q_.begin(), q_.end(), std::int64_t{0}); }

std::int64_t VirtualQueues::max() const noexcept {
    return q_.empty() ? 0 : *std::max_element(q_.begin(), q_.end());
}

std::vector<std::int64_t> virtual_arrival_vector(int edge_count, std::span<const RouteLoad> loads) {
    std::vector<std::int64_t> a(static_cast<std::size_t>(edge_count), 0);
    for (const RouteLoad& load : loads) {
        if (load.count == 0 || load.route == nullptr) continue;
        for (const TreeEdge& te : load.route->edges) {
            if (te.edge < 0 || te.edge >= edge_count) {
                throw ValidationError("route edge outside the graph");
            }
            a[static_cast<std::size_t>(te.edge)] += load.count;
        }
    }
    return a;
}

void AssociatedQueues::update(std::span<const std::int64_t> arrivals, const ActivationVector& mu) {
    check_lengths(q_.size(), arrivals.size());
    std::vector<char> served(q_.size(), 0);
    for (EdgeId e : mu.active) served[static_cast<std::size_t>(e)] = 1;
    for (std::size_t e = 0; e < q_.size(); ++e) {
        q_[e] = std::max<std::int64_t>(0, q_[e] - served[e]) + arrivals[e];
    }
}

void ArrivalServiceHistory::record(std::span<const std::int64_t> arrivals, const ActivationVector& mu) {
    check_lengths(static_cast<std::size_t>(edge_count_), arrivals.size());
    arrivals_.emplace_back(arrivals.begin(), arrivals.end());
    service_.push_back(mu.mask(edge_count_));
}

std::int64_t ArrivalServiceHistory::arrivals(std::int64_t slot, EdgeId e) const {
    return arrivals_.at(static_cast<std::size_t>(slot)).at(static_cast<std::size_t>(e));
}

std::int64_t ArrivalServiceHistory::service(std::int64_t slot, EdgeId e) const {
    return service_.at(static_cast<std::size_t>(slot)).at(static_cast<std::size_t>(e));
}

std::int64_t skorokhod_value(const ArrivalServiceHistory& history, EdgeId e, std::int64_t t) {
    if (t > history.slots()) {
        throw ValidationError("history shorter than the requested slot");
    }
    std::int64_t window = 0;
    std::int64_t best = 0;
    for (std::int64_t tau = 1; tau <= t; ++tau) {
        window += history.arrivals(t - tau, e) - history.service(t - tau, e);
        best = std::max(best, window);
    }
    return best;
}

std::int64_t loading_slack(const ArrivalServiceHistory& history, EdgeId e, std::int64_t t0, std::int64_t t) {
    if (t0 < 0 || t0 > t || t > history.slots()) {
        throw ValidationError("loading window outside the recorded history");
    }
    std::int64_t slack = 0;
    for (std::int64_t tau = t0; tau < t; ++tau) {
        slack += history.arrivals(tau, e) - history.service(tau, e);
    }
    return slack;
}

SkorokhodMonitor::SkorokhodMonitor(int edge_count)
    : prefix_(static_cast<std::size_t>(edge_count), 0), min_prefix_(static_cast<std::size_t>(edge_count), 0) {}

void SkorokhodMonitor::observe(std::span<const std::int64_t> arrivals, const ActivationVector& mu) {
    check_lengths(prefix_.size(), arrivals.size());
    std::vector<char> served(prefix_.size(), 0);
    for (EdgeId e : mu.active) served[static_cast<std::size_t>(e)] = 1;
    for (std::size_t e = 0; e < prefix_.size(); ++e) {
        // min over k < t includes the prefix before this slot's increment.
        min_prefix_[e] = slots_ == 0 ? prefix_[e] : std::min(min_prefix_[e], prefix_[e]);
        prefix_[e] += arrivals[e] - served[e];
    }
    ++slots_;
}

std::int64_t SkorokhodMonitor::value(EdgeId e) const { return std::max<std::int64_t>(0, max_window_slack(e)); }

std::int64_t SkorokhodMonitor::max_window_slack(EdgeId e) const {
    if (slots_ == 0) return 0;
    const auto i = static_cast<std::size_t>(e);
    return prefix_.at(i) - min_prefix_.at(i);
}

}  // namespace umw
