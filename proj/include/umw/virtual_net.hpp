#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "umw/activation.hpp"
#include "umw/routing.hpp"

namespace umw {

/// Precedence-relaxed per-edge counters. Every packet is counted at all
/// edges of its route the slot it arrives; each edge drains by its
/// allocated service.
class VirtualQueues {
  public:
    VirtualQueues() = default;
    explicit VirtualQueues(int edge_count);

    // q <- (q + A - mu)^+; cumulative service counts allocations, used or not.
    void lindley_update(std::span<const std::int64_t> arrivals, const ActivationVector& mu);

    std::span<const std::int64_t> lengths() const noexcept { return q_; }
    std::span<const std::int64_t> cum_arrivals() const noexcept { return cum_arrivals_; }
    std::span<const std::int64_t> cum_service() const noexcept { return cum_service_; }
    std::int64_t slot() const noexcept { return slot_; }
    std::int64_t total() const noexcept;
    std::int64_t max() const noexcept;

  private:
    std::vector<std::int64_t> q_;
    std::vector<std::int64_t> cum_arrivals_;
    std::vector<std::int64_t> cum_service_;
    std::int64_t slot_ = 0;
};

struct RouteLoad {
    const RouteTree* route = nullptr;
    std::int64_t count = 0;
};

/// A_e = sum over classes of (arrivals) * [e in that class's route].
std::vector<std::int64_t> virtual_arrival_vector(int edge_count, std::span<const RouteLoad> loads);

/// Comparison recursion q <- (q - mu)^+ + A, which lies within A_max above
/// the Lindley recursion.
class AssociatedQueues {
  public:
    AssociatedQueues() = default;
    explicit AssociatedQueues(int edge_count) : q_(static_cast<std::size_t>(edge_count), 0) {}
    explicit AssociatedQueues(std::vector<std::int64_t> initial) : q_(std::move(initial)) {}

    void update(std::span<const std::int64_t> arrivals, const ActivationVector& mu);
    std::span<const std::int64_t> lengths() const noexcept { return q_; }

  private:
    std::vector<std::int64_t> q_;
};

/// Raw per-slot arrival and allocated-service record, indexed [slot][edge].
class ArrivalServiceHistory {
  public:
    explicit ArrivalServiceHistory(int edge_count) : edge_count_(edge_count) {}

    void record(std::span<const std::int64_t> arrivals, const ActivationVector& mu);
    std::int64_t slots() const noexcept { return static_cast<std::int64_t>(arrivals_.size()); }
    int edge_count() const noexcept { return edge_count_; }
    std::int64_t arrivals(std::int64_t slot, EdgeId e) const;
    std::int64_t service(std::int64_t slot, EdgeId e) const;

  private:
    int edge_count_;
    std::vector<std::vector<std::int64_t>> arrivals_;
    std::vector<std::vector<char>> service_;
};

/// Closed form of the Lindley queue at slot t evaluated directly from the
/// raw history: (max over windows [t - tau, t) of arrivals minus service)^+.
std::int64_t skorokhod_value(const ArrivalServiceHistory& history, EdgeId e, std::int64_t t);

/// A_e(t0, t) - S_e(t0, t) over the half-open window [t0, t).
std::int64_t loading_slack(const ArrivalServiceHistory& history, EdgeId e, std::int64_t t0, std::int64_t t);

/// O(1)-per-slot evaluation of the same closed form through prefix sums
/// P(t) = A(0,t) - S(0,t): q(t) = (P(t) - min_{k<t} P(k))^+.
class SkorokhodMonitor {
  public:
    SkorokhodMonitor() = default;
    explicit SkorokhodMonitor(int edge_count);

    void observe(std::span<const std::int64_t> arrivals, const ActivationVector& mu);

    std::int64_t value(EdgeId e) const;
    // max over t0 < t of A_e(t0,t) - S_e(t0,t); 0 before the first slot.
    std::int64_t max_window_slack(EdgeId e) const;

  private:
    std::vector<std::int64_t> prefix_;
    std::vector<std::int64_t> min_prefix_;
    std::int64_t slots_ = 0;
};

}  // namespace umw
