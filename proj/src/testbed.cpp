#include "umw/testbed.hpp"

#include "umw/error.hpp"

namespace umw {

Graph grid_graph(int rows, int cols, bool directed) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const NodeId u = r * cols + c;
            if (c + 1 < cols) edges.emplace_back(u, u + 1);
            if (r + 1 < rows) edges.emplace_back(u, u + cols);
        }
    }
    return Graph(rows * cols, edges, directed);
}

std::vector<std::string> builtin_names() { return {"grid3x3_broadcast", "twinpath_unicast", "line3"}; }

Testbed builtin_topology(const std::string& name) {
    Testbed tb;
    tb.name = name;
    if (name == "grid3x3_broadcast") {
        tb.graph = grid_graph(3, 3, true);
        tb.activation = ActivationSet::primary_interference(tb.graph.edge_count(), enumerate_matchings(tb.graph));
        tb.classes.push_back(TrafficClass{0, FlowKind::broadcast, 0, {}, 0.4});
    } else if (name == "twinpath_unicast") {
        tb.graph = Graph(8,
                         {{0, 2}, {2, 3}, {3, 7},   // first 0->7 path
                          {0, 5}, {5, 6}, {6, 7},   // second 0->7 path
                          {4, 3}, {3, 1},           // 4->1 path
                          {2, 6}, {5, 3}},          // crossovers between the 0->7 paths
                         true);
        tb.activation = ActivationSet::wired(tb.graph.edge_count());
        tb.classes.push_back(TrafficClass{0, FlowKind::unicast, 0, {7}, 2.0});
        tb.classes.push_back(TrafficClass{1, FlowKind::unicast, 4, {1}, 1.0});
    } else if (name == "line3") {
        tb.graph = Graph(3, {{0, 1}, {1, 2}}, false);
        tb.activation = ActivationSet::wired(tb.graph.edge_count());
        tb.classes.push_back(TrafficClass{0, FlowKind::unicast, 0, {2}, 1.0});
    } else {
        throw ValidationError("unknown builtin topology '" + name + "'");
    }
    for (auto& cls : tb.classes) cls = normalize_class(cls, tb.graph);
    return tb;
}

}  // namespace umw
