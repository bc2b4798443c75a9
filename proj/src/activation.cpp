#include "umw/activation.hpp"

#include "umw/error.hpp"

namespace umw {

std::vector<char> ActivationVector::mask(int edge_count) const {
    std::vector<char> m(static_cast<std::size_t>(edge_count), 0);
    for (EdgeId e : active) m[static_cast<std::size_t>(e)] = 1;
    return m;
}

ActivationVector max_weight_activation(const ActivationSet& aset, const EdgeWeights& w) {
    if (w.size() != aset.edge_count()) {
        throw ValidationError("edge weight vector length does not match the activation set");
    }
    if (aset.kind() == ActivationKind::wired) {
        ActivationVector all;
        all.active.reserve(static_cast<std::size_t>(aset.edge_count()));
        for (int e = 0; e < aset.edge_count(); ++e) all.active.push_back(e);
        return all;
    }
    const auto& members = aset.members();
    if (members.empty()) {
        throw ValidationError("activation set is empty");
    }
    std::size_t best = 0;
    double best_weight = -1.0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        double total = 0.0;
        for (EdgeId e : members[i]) total += w[e];
        if (total > best_weight) {
            best_weight = total;
            best = i;
        }
    }
    return ActivationVector{members[best]};
}

double activation_weight(const ActivationVector& a, const EdgeWeights& w) {
    double total = 0.0;
    for (EdgeId e : a.active) total += w[e];
    return total;
}

}  // namespace umw
