#pragma once

#include <vector>

#include "umw/routing.hpp"
#include "umw/topology.hpp"

namespace umw {

struct ActivationVector {
    std::vector<EdgeId> active;  // sorted

    std::vector<char> mask(int edge_count) const;
    bool operator==(const ActivationVector&) const = default;
};

/// Max-weight member of the activation set. Wired activates every edge;
/// otherwise ties go to the smallest member index (for materialized
/// matchings, the lexicographically smallest edge set).
ActivationVector max_weight_activation(const ActivationSet& aset, const EdgeWeights& w);

double activation_weight(const ActivationVector& a, const EdgeWeights& w);

}  // namespace umw
