#include "umw/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "umw/error.hpp"
#include "umw/lp.hpp"

namespace umw {

namespace {

void simple_paths(const Graph& g, NodeId s, NodeId t, int cap, std::vector<RouteTree>& out) {
    if (s == t) {
        out.push_back(orient_tree(g, s, {}, {t}));
        return;
    }
    std::vector<char> on_path(static_cast<std::size_t>(g.node_count()), 0);
    std::vector<EdgeId> edges;
    int found = 0;
    std::function<void(NodeId)> dfs = [&](NodeId x) {
        if (x == t) {
            if (++found > cap) {
                throw CapExceededError("simple path enumeration " + std::to_string(s) + "->" + std::to_string(t), cap);
            }
            out.push_back(orient_tree(g, s, edges, {t}));
            return;
        }
        on_path[static_cast<std::size_t>(x)] = 1;
        for (const Arc& a : g.out_arcs(x)) {
            if (on_path[static_cast<std::size_t>(a.to)]) continue;
            edges.push_back(a.edge);
            dfs(a.to);
            edges.pop_back();
        }
        on_path[static_cast<std::size_t>(x)] = 0;
    };
    dfs(s);
}

// Include/exclude recursion over edge ids. Including an edge contracts its
// endpoints (cycles rejected; in digraphs each node keeps one parent and the
// root none); excluding deletes it. `accept` sees every complete forest.
void enumerate_forests(const Graph& g, NodeId root, std::size_t max_size,
                       const std::function<void(const std::vector<EdgeId>&)>& accept) {
    const auto n = static_cast<std::size_t>(g.node_count());
    const auto m = static_cast<std::size_t>(g.edge_count());
    std::vector<EdgeId> chosen;
    std::vector<int> indeg(n, 0);
    std::vector<int> uf(n);
    std::iota(uf.begin(), uf.end(), 0);
    std::function<int(int)> find = [&](int x) { return uf[static_cast<std::size_t>(x)] == x ? x : find(uf[static_cast<std::size_t>(x)]); };

    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == m) {
            accept(chosen);
            return;
        }
        const Edge& e = g.edge(static_cast<EdgeId>(i));
        const int a = find(e.u);
        const int b = find(e.v);
        const bool head_free = !g.directed() || (e.v != root && indeg[static_cast<std::size_t>(e.v)] == 0);
        if (a != b && head_free && chosen.size() < max_size) {
            uf[static_cast<std::size_t>(a)] = b;
            if (g.directed()) ++indeg[static_cast<std::size_t>(e.v)];
            chosen.push_back(e.id);
            rec(i + 1);
            chosen.pop_back();
            if (g.directed()) --indeg[static_cast<std::size_t>(e.v)];
            uf[static_cast<std::size_t>(a)] = a;
        }
        rec(i + 1);
    };
    rec(0);
}

std::vector<NodeId> sorted_nodes(const Graph& g) {
    std::vector<NodeId> v(static_cast<std::size_t>(g.node_count()));
    std::iota(v.begin(), v.end(), 0);
    return v;
}

}  // namespace

std::vector<RouteTree> enumerate_routes(const Graph& g, const TrafficClass& cls, const CatalogCaps& caps) {
    std::vector<RouteTree> out;
    switch (cls.kind) {
        case FlowKind::unicast:
            simple_paths(g, cls.source, cls.destinations.at(0), caps.max_paths, out);
            break;
        case FlowKind::anycast:
            for (NodeId d : cls.destinations) simple_paths(g, cls.source, d, caps.max_paths, out);
            break;
        case FlowKind::broadcast: {
            if (g.edge_count() > caps.max_tree_edges) {
                throw CapExceededError("spanning tree enumeration over " + std::to_string(g.edge_count()) + " edges",
                                       caps.max_tree_edges);
            }
            const auto need = static_cast<std::size_t>(g.node_count() - 1);
            const auto all = sorted_nodes(g);
            enumerate_forests(g, cls.source, need, [&](const std::vector<EdgeId>& edges) {
                if (edges.size() != need) return;
                if (auto tree = try_orient_tree(g, cls.source, edges, all)) out.push_back(std::move(*tree));
            });
            break;
        }
        case FlowKind::multicast: {
            if (g.edge_count() > caps.max_tree_edges) {
                throw CapExceededError("Steiner tree enumeration over " + std::to_string(g.edge_count()) + " edges",
                                       caps.max_tree_edges);
            }
            const auto& terms = cls.destinations;
            auto is_term = [&](NodeId v) { return std::binary_search(terms.begin(), terms.end(), v); };
            enumerate_forests(g, cls.source, static_cast<std::size_t>(g.node_count() - 1),
                              [&](const std::vector<EdgeId>& edges) {
                                  auto tree = try_orient_tree(g, cls.source, edges, terms);
                                  if (!tree) return;
                                  // Inclusion-minimal exactly when every leaf is a terminal.
                                  for (const TreeEdge& te : tree->edges) {
                                      const bool leaf = std::none_of(
                                          tree->edges.begin(), tree->edges.end(),
                                          [&](const TreeEdge& o) { return o.parent == te.child; });
                                      if (leaf && !is_term(te.child)) return;
                                  }
                                  out.push_back(std::move(*tree));
                              });
            break;
        }
    }
    return out;
}

RouteCatalog build_catalog(const Graph& g, std::span<const TrafficClass> classes, const CatalogCaps& caps) {
    RouteCatalog catalog;
    for (const TrafficClass& cls : classes) catalog.routes.push_back(enumerate_routes(g, cls, caps));
    return catalog;
}

CapacityCertificate max_scaling(const Graph& g, const ActivationSet& aset, std::span<const TrafficClass> classes,
                                const RouteCatalog& catalog) {
    if (catalog.routes.size() != classes.size()) {
        throw ValidationError("route catalog does not match the class list");
    }
    if (std::none_of(classes.begin(), classes.end(), [](const TrafficClass& c) { return c.rate > 0.0; })) {
        throw ValidationError("every class rate is zero; the scaling is unbounded");
    }
    for (std::size_t c = 0; c < classes.size(); ++c) {
        if (classes[c].rate > 0.0 && catalog.routes[c].empty()) {
            throw ValidationError("class " + std::to_string(classes[c].id) + " has a positive rate but no routes");
        }
    }
    const auto members = aset.effective_members();
    const auto m = static_cast<std::size_t>(g.edge_count());

    // Columns: rho, then route flows by class, then the mixture weights.
    std::vector<std::size_t> first_route(classes.size());
    std::size_t cols = 1;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        first_route[c] = cols;
        cols += catalog.routes[c].size();
    }
    const std::size_t first_member = cols;
    cols += members.size();

    lp::Problem prob;
    prob.variables = static_cast<int>(cols);
    prob.objective.assign(cols, 0);
    prob.objective[0] = 1;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        lp::Row row{std::vector<mpq_class>(cols, 0), lp::Sense::eq, 0};
        row.coeffs[0] = -mpq_class(classes[c].rate);
        for (std::size_t i = 0; i < catalog.routes[c].size(); ++i) row.coeffs[first_route[c] + i] = 1;
        prob.rows.push_back(std::move(row));
    }
    for (std::size_t e = 0; e < m; ++e) {
        lp::Row row{std::vector<mpq_class>(cols, 0), lp::Sense::le, 0};
        for (std::size_t c = 0; c < classes.size(); ++c) {
            for (std::size_t i = 0; i < catalog.routes[c].size(); ++i) {
                if (catalog.routes[c][i].contains(static_cast<EdgeId>(e))) row.coeffs[first_route[c] + i] = 1;
            }
        }
        for (std::size_t j = 0; j < members.size(); ++j) {
            if (std::binary_search(members[j].begin(), members[j].end(), static_cast<EdgeId>(e))) {
                row.coeffs[first_member + j] = -1;
            }
        }
        prob.rows.push_back(std::move(row));
    }
    {
        lp::Row row{std::vector<mpq_class>(cols, 0), lp::Sense::eq, 1};
        for (std::size_t j = 0; j < members.size(); ++j) row.coeffs[first_member + j] = 1;
        prob.rows.push_back(std::move(row));
    }

    const lp::Solution sol = lp::solve(prob);
    if (sol.status == lp::Status::infeasible) {
        throw Error("capacity LP is infeasible");
    }
    if (sol.status == lp::Status::unbounded) {
        throw Error("capacity LP is unbounded");
    }

    CapacityCertificate cert;
    cert.rho_star = sol.x[0].get_d();
    cert.rho_star_exact = sol.x[0].get_str();
    for (const TrafficClass& cls : classes) cert.rates.push_back(cls.rate);
    cert.flows.resize(classes.size());
    for (std::size_t c = 0; c < classes.size(); ++c) {
        for (std::size_t i = 0; i < catalog.routes[c].size(); ++i) {
            const mpq_class& x = sol.x[first_route[c] + i];
            if (sgn(x) != 0) cert.flows[c].push_back(RouteFlow{catalog.routes[c][i], x.get_d()});
        }
    }
    for (std::size_t j = 0; j < members.size(); ++j) {
        const mpq_class& p = sol.x[first_member + j];
        if (sgn(p) != 0) cert.mixture.push_back(MixtureTerm{members[j], p.get_d()});
    }
    return cert;
}

bool verify_certificate(const CapacityCertificate& cert, const Graph& g, const ActivationSet& aset,
                        std::span<const TrafficClass> classes, double tolerance) {
    if (cert.flows.size() != classes.size() || !(cert.rho_star >= -tolerance)) return false;
    const auto m = static_cast<std::size_t>(g.edge_count());
    std::vector<double> load(m, 0.0);
    for (std::size_t c = 0; c < classes.size(); ++c) {
        double total = 0.0;
        for (const RouteFlow& rf : cert.flows[c]) {
            if (!(rf.flow >= -tolerance) || !is_valid_route(g, rf.route) || rf.route.root != classes[c].source) {
                return false;
            }
            const auto& cov = rf.route.covered;
            const auto& dests = classes[c].destinations;
            if (classes[c].kind == FlowKind::anycast) {
                if (cov.size() != 1 || !std::binary_search(dests.begin(), dests.end(), cov[0])) return false;
            } else if (cov != dests) {
                return false;
            }
            total += rf.flow;
            for (const TreeEdge& te : rf.route.edges) load[static_cast<std::size_t>(te.edge)] += rf.flow;
        }
        if (std::abs(total - cert.rho_star * classes[c].rate) > tolerance) return false;
    }

    const auto members = aset.effective_members();
    std::vector<double> service(m, 0.0);
    double mass = 0.0;
    for (const MixtureTerm& term : cert.mixture) {
        if (!(term.probability >= -tolerance)) return false;
        if (std::find(members.begin(), members.end(), term.member) == members.end()) return false;
        mass += term.probability;
        for (EdgeId e : term.member) service[static_cast<std::size_t>(e)] += term.probability;
    }
    if (std::abs(mass - 1.0) > tolerance) return false;
    for (std::size_t e = 0; e < m; ++e) {
        if (load[e] > service[e] + tolerance) return false;
    }
    return true;
}

nlohmann::json certificate_to_json(const CapacityCertificate& cert) {
    nlohmann::json doc;
    doc["rho_star"] = cert.rho_star;
    doc["rho_star_exact"] = cert.rho_star_exact;
    doc["rates"] = cert.rates;
    auto classes = nlohmann::json::array();
    for (std::size_t c = 0; c < cert.flows.size(); ++c) {
        auto routes = nlohmann::json::array();
        for (const RouteFlow& rf : cert.flows[c]) {
            routes.push_back({{"edges", rf.route.edge_ids()}, {"covered", rf.route.covered}, {"flow", rf.flow}});
        }
        classes.push_back({{"class_index", c}, {"routes", std::move(routes)}});
    }
    doc["flows"] = std::move(classes);
    auto mixture = nlohmann::json::array();
    for (const MixtureTerm& term : cert.mixture) {
        mixture.push_back({{"member", term.member}, {"probability", term.probability}});
    }
    doc["mixture"] = std::move(mixture);
    return doc;
}

}  // namespace umw
