#include "umw/topology.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "umw/error.hpp"

namespace umw {

Graph::Graph(int node_count, const std::vector<std::pair<NodeId, NodeId>>& endpoints, bool directed)
    : node_count_(node_count), directed_(directed) {
    if (node_count < 1) {
        throw ValidationError("graph must have at least one node");
    }
    out_.resize(static_cast<std::size_t>(node_count));
    in_.resize(static_cast<std::size_t>(node_count));

    std::set<std::pair<NodeId, NodeId>> seen;
    for (const auto& [u, v] : endpoints) {
        const EdgeId id = static_cast<EdgeId>(edges_.size());
        if (u < 0 || u >= node_count || v < 0 || v >= node_count) {
            throw ValidationError("edge " + std::to_string(id) + " has node id out of range");
        }
        if (u == v) {
            throw ValidationError("edge " + std::to_string(id) + " is a self-loop at node " + std::to_string(u));
        }
        const auto key = directed ? std::pair{u, v} : std::pair{std::min(u, v), std::max(u, v)};
        if (!seen.insert(key).second) {
            throw ValidationError("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
        }
        edges_.push_back(Edge{id, u, v});
        out_[static_cast<std::size_t>(u)].push_back(Arc{id, u, v});
        in_[static_cast<std::size_t>(v)].push_back(Arc{id, u, v});
        if (!directed) {
            out_[static_cast<std::size_t>(v)].push_back(Arc{id, v, u});
            in_[static_cast<std::size_t>(u)].push_back(Arc{id, v, u});
        }
    }
}

Arc Graph::arc_from(EdgeId e, NodeId from) const {
    const Edge& ed = edge(e);
    if (from == ed.u) {
        return Arc{e, ed.u, ed.v};
    }
    if (!directed_ && from == ed.v) {
        return Arc{e, ed.v, ed.u};
    }
    return Arc{e, from, -1};
}

const char* to_string(ActivationKind kind) noexcept {
    switch (kind) {
        case ActivationKind::wired:
            return "wired";
        case ActivationKind::primary_interference:
            return "primary_interference";
        case ActivationKind::explicit_sets:
            return "explicit";
    }
    return "?";
}

ActivationKind parse_activation_kind(const std::string& name) {
    if (name == "wired") return ActivationKind::wired;
    if (name == "primary_interference") return ActivationKind::primary_interference;
    if (name == "explicit") return ActivationKind::explicit_sets;
    throw ParseError("unknown activation kind '" + name + "'");
}

ActivationSet::ActivationSet(ActivationKind kind, int edge_count, std::vector<std::vector<EdgeId>> members)
    : kind_(kind), edge_count_(edge_count), members_(std::move(members)) {
    for (auto& member : members_) {
        std::sort(member.begin(), member.end());
        if (std::adjacent_find(member.begin(), member.end()) != member.end()) {
            throw ValidationError("activation member repeats an edge id");
        }
        for (EdgeId e : member) {
            if (e < 0 || e >= edge_count) {
                throw ValidationError("activation member references edge " + std::to_string(e) + " outside 0.." +
                                      std::to_string(edge_count - 1));
            }
        }
    }
    if (kind_ != ActivationKind::wired && members_.empty()) {
        throw ValidationError("activation set has no members");
    }
}

ActivationSet ActivationSet::wired(int edge_count) { return ActivationSet(ActivationKind::wired, edge_count, {}); }

ActivationSet ActivationSet::primary_interference(int edge_count, std::vector<std::vector<EdgeId>> matchings) {
    ActivationSet set(ActivationKind::primary_interference, edge_count, std::move(matchings));
    std::sort(set.members_.begin(), set.members_.end());
    return set;
}

ActivationSet ActivationSet::explicit_sets(int edge_count, std::vector<std::vector<EdgeId>> members) {
    return ActivationSet(ActivationKind::explicit_sets, edge_count, std::move(members));
}

std::vector<std::vector<EdgeId>> ActivationSet::effective_members() const {
    if (kind_ != ActivationKind::wired) {
        return members_;
    }
    std::vector<EdgeId> all(static_cast<std::size_t>(edge_count_));
    for (int e = 0; e < edge_count_; ++e) all[static_cast<std::size_t>(e)] = e;
    return {all};
}

namespace {

// Backtracking over edges in id order: each edge is either taken (if free)
// or skipped. A complete assignment is kept when no skipped edge could still
// be added, i.e. the matching is maximal.
void extend_matchings(const Graph& g, std::size_t next, std::vector<char>& busy, std::vector<EdgeId>& current,
                      std::vector<std::vector<EdgeId>>& out) {
    const auto edges = g.edges();
    if (next == edges.size()) {
        for (const Edge& e : edges) {
            if (!busy[static_cast<std::size_t>(e.u)] && !busy[static_cast<std::size_t>(e.v)]) {
                return;
            }
        }
        out.push_back(current);
        return;
    }
    const Edge& e = edges[next];
    const auto u = static_cast<std::size_t>(e.u);
    const auto v = static_cast<std::size_t>(e.v);
    if (!busy[u] && !busy[v]) {
        busy[u] = busy[v] = 1;
        current.push_back(e.id);
        extend_matchings(g, next + 1, busy, current, out);
        current.pop_back();
        busy[u] = busy[v] = 0;
    }
    extend_matchings(g, next + 1, busy, current, out);
}

}  // namespace

std::vector<std::vector<EdgeId>> enumerate_matchings(const Graph& g, int cap) {
    if (g.edge_count() > cap) {
        throw CapExceededError("matching enumeration over " + std::to_string(g.edge_count()) + " edges", cap);
    }
    std::vector<std::vector<EdgeId>> out;
    if (g.edge_count() == 0) {
        return out;
    }
    std::vector<char> busy(static_cast<std::size_t>(g.node_count()), 0);
    std::vector<EdgeId> current;
    extend_matchings(g, 0, busy, current, out);
    std::sort(out.begin(), out.end());
    return out;
}

Topology parse_topology(const nlohmann::json& doc) {
    try {
        if (!doc.is_object()) {
            throw ParseError("topology document must be a JSON object");
        }
        const bool directed = doc.value("directed", false);
        const int nodes = doc.at("nodes").get<int>();
        std::vector<std::pair<NodeId, NodeId>> endpoints;
        for (const auto& pair : doc.at("edges")) {
            if (!pair.is_array() || pair.size() != 2) {
                throw ParseError("each edge must be a [u, v] pair");
            }
            endpoints.emplace_back(pair[0].get<int>(), pair[1].get<int>());
        }
        Graph graph(nodes, endpoints, directed);

        ActivationSet activation = ActivationSet::wired(graph.edge_count());
        if (doc.contains("activation")) {
            const auto& act = doc.at("activation");
            const ActivationKind kind = parse_activation_kind(act.at("kind").get<std::string>());
            std::vector<std::vector<EdgeId>> members;
            if (act.contains("members")) {
                members = act.at("members").get<std::vector<std::vector<EdgeId>>>();
            }
            switch (kind) {
                case ActivationKind::wired:
                    break;
                case ActivationKind::primary_interference: {
                    if (members.empty()) {
                        members = enumerate_matchings(graph);
                    }
                    for (const auto& member : members) {
                        std::vector<char> used(static_cast<std::size_t>(graph.node_count()), 0);
                        for (EdgeId e : member) {
                            if (e < 0 || e >= graph.edge_count()) {
                                throw ValidationError("activation member references unknown edge " +
                                                      std::to_string(e));
                            }
                            const Edge& ed = graph.edge(e);
                            if (used[static_cast<std::size_t>(ed.u)]++ || used[static_cast<std::size_t>(ed.v)]++) {
                                throw ValidationError("primary-interference member is not a matching");
                            }
                        }
                    }
                    activation = ActivationSet::primary_interference(graph.edge_count(), std::move(members));
                    break;
                }
                case ActivationKind::explicit_sets:
                    activation = ActivationSet::explicit_sets(graph.edge_count(), std::move(members));
                    break;
            }
        }
        return Topology{std::move(graph), std::move(activation)};
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("malformed topology: ") + ex.what());
    }
}

nlohmann::json topology_to_json(const Topology& topo) {
    nlohmann::json doc;
    doc["directed"] = topo.graph.directed();
    doc["nodes"] = topo.graph.node_count();
    auto edges = nlohmann::json::array();
    for (const Edge& e : topo.graph.edges()) {
        edges.push_back({e.u, e.v});
    }
    doc["edges"] = std::move(edges);
    nlohmann::json act;
    act["kind"] = to_string(topo.activation.kind());
    if (topo.activation.kind() != ActivationKind::wired) {
        act["members"] = topo.activation.members();
    }
    doc["activation"] = std::move(act);
    return doc;
}

Topology load_topology(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open topology file " + path.string());
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError("topology file " + path.string() + ": " + ex.what());
    }
    return parse_topology(doc);
}

void write_topology(const Topology& topo, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write topology file " + path.string());
    }
    out << topology_to_json(topo).dump(2) << '\n';
}

}  // namespace umw
