#pragma once

#include <string>
#include <vector>

#include "umw/topology.hpp"
#include "umw/traffic.hpp"

namespace umw {

/// A ready-to-run network: topology, activation set and traffic classes.
struct Testbed {
    std::string name;
    Graph graph;
    ActivationSet activation;
    std::vector<TrafficClass> classes;
};

/// Builtin testbeds:
///  - grid3x3_broadcast: 3x3 lattice with links oriented right and down
///    away from corner node 0, primary interference, one broadcast class
///    from node 0 at rate 0.4 (its broadcast capacity).
///  - twinpath_unicast: wired 8-node digraph with two edge-disjoint
///    0->7 paths (plus two crossovers) and a 4->1 path sharing none of
///    their edges; unicast classes 0->7 at rate 2 and 4->1 at rate 1.
///  - line3: wired undirected path 0-1-2 with a unicast class 0->2 at rate 1.
Testbed builtin_topology(const std::string& name);

std::vector<std::string> builtin_names();

/// rows x cols lattice with row-major node ids. Edges are listed in
/// row-major order of their lower endpoint, right neighbour before down
/// neighbour; directed lattices orient every edge that way.
Graph grid_graph(int rows, int cols, bool directed);

}  // namespace umw
