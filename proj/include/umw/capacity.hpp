#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "umw/routing.hpp"
#include "umw/topology.hpp"
#include "umw/traffic.hpp"

namespace umw {

struct CatalogCaps {
    int max_tree_edges = 12;  // spanning / Steiner enumeration
    int max_paths = 100;      // simple paths per source-destination pair
};

/// Every admissible route of one class: simple paths (unicast, anycast per
/// destination), spanning trees or arborescences (broadcast), or
/// inclusion-minimal trees covering the destinations (multicast).
/// Throws CapExceededError outside the caps.
std::vector<RouteTree> enumerate_routes(const Graph& g, const TrafficClass& cls, const CatalogCaps& caps = {});

struct RouteCatalog {
    std::vector<std::vector<RouteTree>> routes;  // per class index
};

RouteCatalog build_catalog(const Graph& g, std::span<const TrafficClass> classes, const CatalogCaps& caps = {});

struct RouteFlow {
    RouteTree route;
    double flow = 0.0;
};

struct MixtureTerm {
    std::vector<EdgeId> member;
    double probability = 0.0;
};

/// Fractional route split plus activation mixture supporting rho* times
/// the class rates.
struct CapacityCertificate {
    double rho_star = 0.0;
    std::string rho_star_exact;  // rational, "p/q"
    std::vector<double> rates;   // unscaled class rates
    std::vector<std::vector<RouteFlow>> flows;
    std::vector<MixtureTerm> mixture;
};

/// Largest rho such that rho * rates lies in the capacity region spanned
/// by the catalog and the activation set, solved as an exact rational LP.
CapacityCertificate max_scaling(const Graph& g, const ActivationSet& aset, std::span<const TrafficClass> classes,
                                const RouteCatalog& catalog);

/// Rechecks the flow-conservation, edge-budget and mixture constraints.
bool verify_certificate(const CapacityCertificate& cert, const Graph& g, const ActivationSet& aset,
                        std::span<const TrafficClass> classes, double tolerance = 1e-9);

nlohmann::json certificate_to_json(const CapacityCertificate& cert);

}  // namespace umw
