#include "umw/routing.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <tuple>

#include "umw/error.hpp"

namespace umw {

EdgeWeights::EdgeWeights(std::vector<double> w) : w_(std::move(w)) {
    for (double x : w_) {
        if (!(x >= 0.0)) {
            throw ValidationError("edge weights must be nonnegative");
        }
    }
}

EdgeWeights EdgeWeights::from_counts(std::span<const std::int64_t> counts) {
    std::vector<double> w(counts.size());
    std::transform(counts.begin(), counts.end(), w.begin(), [](std::int64_t c) { return static_cast<double>(c); });
    return EdgeWeights(std::move(w));
}

std::vector<EdgeId> RouteTree::edge_ids() const {
    std::vector<EdgeId> ids;
    ids.reserve(edges.size());
    for (const TreeEdge& te : edges) ids.push_back(te.edge);
    std::sort(ids.begin(), ids.end());
    return ids;
}

bool RouteTree::contains(EdgeId e) const {
    return std::any_of(edges.begin(), edges.end(), [e](const TreeEdge& te) { return te.edge == e; });
}

RouteTree orient_tree(const Graph& g, NodeId root, std::span<const EdgeId> edge_set, std::vector<NodeId> covered) {
    const auto n = static_cast<std::size_t>(g.node_count());
    if (root < 0 || root >= g.node_count()) {
        throw ValidationError("route root out of range");
    }
    std::vector<char> in_set(static_cast<std::size_t>(g.edge_count()), 0);
    for (EdgeId e : edge_set) {
        if (e < 0 || e >= g.edge_count() || in_set[static_cast<std::size_t>(e)]) {
            throw ValidationError("route edge set has an invalid or repeated edge");
        }
        in_set[static_cast<std::size_t>(e)] = 1;
    }

    RouteTree tree;
    tree.root = root;
    std::vector<int> depth(n, -1);
    depth[static_cast<std::size_t>(root)] = 0;
    std::vector<char> used(static_cast<std::size_t>(g.edge_count()), 0);
    std::queue<NodeId> frontier;
    frontier.push(root);
    while (!frontier.empty()) {
        const NodeId x = frontier.front();
        frontier.pop();
        for (const Arc& a : g.out_arcs(x)) {
            const auto e = static_cast<std::size_t>(a.edge);
            if (!in_set[e] || used[e]) continue;
            used[e] = 1;
            if (depth[static_cast<std::size_t>(a.to)] != -1) {
                throw ValidationError("route edge set contains a cycle or a node with two parents");
            }
            const int d = depth[static_cast<std::size_t>(x)];
            depth[static_cast<std::size_t>(a.to)] = d + 1;
            tree.edges.push_back(TreeEdge{a.edge, x, a.to, d});
            frontier.push(a.to);
        }
    }
    if (tree.edges.size() != edge_set.size()) {
        throw ValidationError("route edge set is not an out-tree from the root");
    }
    std::sort(tree.edges.begin(), tree.edges.end(),
              [](const TreeEdge& a, const TreeEdge& b) { return std::tie(a.depth, a.edge) < std::tie(b.depth, b.edge); });
    std::sort(covered.begin(), covered.end());
    covered.erase(std::unique(covered.begin(), covered.end()), covered.end());
    for (NodeId c : covered) {
        if (c < 0 || c >= g.node_count() || depth[static_cast<std::size_t>(c)] == -1) {
            throw ValidationError("covered destination is not a tree node");
        }
    }
    tree.covered = std::move(covered);
    return tree;
}

std::optional<RouteTree> try_orient_tree(const Graph& g, NodeId root, std::span<const EdgeId> edge_set,
                                         std::vector<NodeId> covered) {
    try {
        return orient_tree(g, root, edge_set, std::move(covered));
    } catch (const ValidationError&) {
        return std::nullopt;
    }
}

bool is_valid_route(const Graph& g, const RouteTree& tree) {
    const auto n = static_cast<std::size_t>(g.node_count());
    if (tree.root < 0 || tree.root >= g.node_count()) return false;
    std::vector<int> depth(n, -1);
    depth[static_cast<std::size_t>(tree.root)] = 0;
    std::vector<char> seen_edge(static_cast<std::size_t>(g.edge_count()), 0);
    // Parents precede children in the stored (depth, id) order.
    for (const TreeEdge& te : tree.edges) {
        if (te.edge < 0 || te.edge >= g.edge_count() || seen_edge[static_cast<std::size_t>(te.edge)]++) return false;
        const Arc a = g.arc_from(te.edge, te.parent);
        if (a.to != te.child) return false;
        if (te.child == tree.root || depth[static_cast<std::size_t>(te.child)] != -1) return false;
        const int pd = depth[static_cast<std::size_t>(te.parent)];
        if (pd == -1 || te.depth != pd) return false;
        depth[static_cast<std::size_t>(te.child)] = pd + 1;
    }
    if (!std::is_sorted(tree.covered.begin(), tree.covered.end())) return false;
    for (NodeId c : tree.covered) {
        if (c < 0 || c >= g.node_count() || depth[static_cast<std::size_t>(c)] == -1) return false;
    }
    return true;
}

double route_cost(const RouteTree& tree, const EdgeWeights& w) {
    double total = 0.0;
    for (const TreeEdge& te : tree.edges) total += w[te.edge];
    return total;
}

namespace {

struct PathLabel {
    double cost = 0.0;
    int hops = 0;
    std::vector<EdgeId> seq;
    NodeId origin = 0;

    bool operator<(const PathLabel& o) const {
        return std::tie(cost, hops, seq) < std::tie(o.cost, o.hops, o.seq);
    }
};

// Label-setting search ordered by (cost, hops, edge sequence). The order is
// preserved under extension by a common edge, so subpaths of optimal
// labels are optimal and the selection is well defined with zero weights.
std::vector<std::optional<PathLabel>> best_paths(const Graph& g, const EdgeWeights& w, std::span<const NodeId> sources) {
    const auto n = static_cast<std::size_t>(g.node_count());
    std::vector<std::optional<PathLabel>> label(n);
    std::vector<char> done(n, 0);
    for (NodeId s : sources) {
        label[static_cast<std::size_t>(s)] = PathLabel{0.0, 0, {}, s};
    }
    for (;;) {
        std::size_t pick = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (done[v] || !label[v]) continue;
            if (pick == n || *label[v] < *label[pick]) pick = v;
        }
        if (pick == n) break;
        done[pick] = 1;
        for (const Arc& a : g.out_arcs(static_cast<NodeId>(pick))) {
            const auto to = static_cast<std::size_t>(a.to);
            if (done[to]) continue;
            PathLabel cand = *label[pick];
            cand.cost += w[a.edge];
            cand.hops += 1;
            cand.seq.push_back(a.edge);
            if (!label[to] || cand < *label[to]) label[to] = std::move(cand);
        }
    }
    return label;
}

// BFS tree of the subgraph `allowed` from root, with branches that reach no
// required node pruned away.
RouteTree tree_from_subgraph(const Graph& g, NodeId root, const std::vector<char>& allowed,
                             const std::vector<NodeId>& required) {
    const auto n = static_cast<std::size_t>(g.node_count());
    std::vector<EdgeId> parent_edge(n, -1);
    std::vector<NodeId> parent(n, -1);
    std::vector<char> reached(n, 0);
    std::vector<NodeId> order;
    reached[static_cast<std::size_t>(root)] = 1;
    std::queue<NodeId> frontier;
    frontier.push(root);
    while (!frontier.empty()) {
        const NodeId x = frontier.front();
        frontier.pop();
        order.push_back(x);
        for (const Arc& a : g.out_arcs(x)) {
            const auto to = static_cast<std::size_t>(a.to);
            if (!allowed[static_cast<std::size_t>(a.edge)] || reached[to]) continue;
            reached[to] = 1;
            parent[to] = x;
            parent_edge[to] = a.edge;
            frontier.push(a.to);
        }
    }
    std::vector<char> keep(n, 0);
    for (NodeId r : required) {
        if (!reached[static_cast<std::size_t>(r)]) {
            throw UnreachableError("node " + std::to_string(r) + " is unreachable from " + std::to_string(root));
        }
        keep[static_cast<std::size_t>(r)] = 1;
    }
    // Reverse BFS order visits children before parents.
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const auto v = static_cast<std::size_t>(*it);
        if (keep[v] && parent[v] != -1) keep[static_cast<std::size_t>(parent[v])] = 1;
    }
    std::vector<EdgeId> edges;
    for (std::size_t v = 0; v < n; ++v) {
        if (keep[v] && parent_edge[v] != -1) edges.push_back(parent_edge[v]);
    }
    return orient_tree(g, root, edges, required);
}

__extension__ typedef __int128 Int128;

// Lexicographic composite cost used by the arborescence solver: real weight
// first, then a tie term that is unique per edge set.
struct Cost {
    double w = 0.0;
    Int128 tie = 0;

    Cost operator+(const Cost& o) const { return Cost{w + o.w, tie + o.tie}; }
    Cost operator-(const Cost& o) const { return Cost{w - o.w, tie - o.tie}; }
    bool operator<(const Cost& o) const { return w < o.w || (w == o.w && tie < o.tie); }
};

struct WeightedArc {
    int from = 0;
    int to = 0;
    Cost cost;
};

// Chu-Liu/Edmonds minimum arborescence. Returns indices into `arcs`.
std::vector<std::size_t> min_arborescence(int n, int root, const std::vector<WeightedArc>& arcs) {
    const auto un = static_cast<std::size_t>(n);
    std::vector<std::optional<std::size_t>> in(un);
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        const WeightedArc& a = arcs[i];
        if (a.to == root || a.from == a.to) continue;
        auto& best = in[static_cast<std::size_t>(a.to)];
        if (!best || a.cost < arcs[*best].cost) best = i;
    }
    for (int v = 0; v < n; ++v) {
        if (v != root && !in[static_cast<std::size_t>(v)]) {
            throw UnreachableError("node unreachable from the arborescence root");
        }
    }

    std::vector<int> comp(un, -1);
    std::vector<int> visit(un, -1);
    std::vector<int> cycle_ids;
    int ncomp = 0;
    for (int v = 0; v < n; ++v) {
        int x = v;
        while (x != root && visit[static_cast<std::size_t>(x)] == -1) {
            visit[static_cast<std::size_t>(x)] = v;
            x = arcs[*in[static_cast<std::size_t>(x)]].from;
        }
        if (x != root && visit[static_cast<std::size_t>(x)] == v && comp[static_cast<std::size_t>(x)] == -1) {
            int y = x;
            do {
                comp[static_cast<std::size_t>(y)] = ncomp;
                y = arcs[*in[static_cast<std::size_t>(y)]].from;
            } while (y != x);
            cycle_ids.push_back(ncomp++);
        }
    }

    std::vector<std::size_t> chosen;
    if (cycle_ids.empty()) {
        for (int v = 0; v < n; ++v) {
            if (v != root) chosen.push_back(*in[static_cast<std::size_t>(v)]);
        }
        return chosen;
    }
    for (int v = 0; v < n; ++v) {
        if (comp[static_cast<std::size_t>(v)] == -1) comp[static_cast<std::size_t>(v)] = ncomp++;
    }

    std::vector<WeightedArc> contracted;
    std::vector<std::size_t> origin;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        const WeightedArc& a = arcs[i];
        const int cu = comp[static_cast<std::size_t>(a.from)];
        const int cv = comp[static_cast<std::size_t>(a.to)];
        if (cu == cv || a.to == root) continue;
        contracted.push_back(WeightedArc{cu, cv, a.cost - arcs[*in[static_cast<std::size_t>(a.to)]].cost});
        origin.push_back(i);
    }
    const auto sub = min_arborescence(ncomp, comp[static_cast<std::size_t>(root)], contracted);

    std::vector<char> cycle_entered_at(un, 0);
    for (std::size_t j : sub) {
        const std::size_t i = origin[j];
        chosen.push_back(i);
        cycle_entered_at[static_cast<std::size_t>(arcs[i].to)] = 1;
    }
    const int cycles = static_cast<int>(cycle_ids.size());
    for (int v = 0; v < n; ++v) {
        if (comp[static_cast<std::size_t>(v)] < cycles && !cycle_entered_at[static_cast<std::size_t>(v)]) {
            chosen.push_back(*in[static_cast<std::size_t>(v)]);
        }
    }
    return chosen;
}

std::vector<NodeId> all_nodes(const Graph& g) {
    std::vector<NodeId> v(static_cast<std::size_t>(g.node_count()));
    std::iota(v.begin(), v.end(), 0);
    return v;
}

void check_weights(const Graph& g, const EdgeWeights& w) {
    if (w.size() != g.edge_count()) {
        throw ValidationError("edge weight vector length does not match the graph");
    }
}

void check_node(const Graph& g, NodeId v) {
    if (v < 0 || v >= g.node_count()) {
        throw ValidationError("node id " + std::to_string(v) + " out of range");
    }
}

RouteTree steiner_exact(const Graph& g, const EdgeWeights& w, NodeId root, const std::vector<NodeId>& terms,
                        const std::vector<NodeId>& covered) {
    const auto n = static_cast<std::size_t>(g.node_count());
    const std::size_t k = terms.size();
    const std::size_t full = (std::size_t{1} << k) - 1;
    constexpr double inf = std::numeric_limits<double>::infinity();

    // dp[mask][v]: cheapest out-tree rooted at v covering terms in mask.
    struct Back {
        enum class Kind { none, base, merge, arc } kind = Kind::none;
        std::size_t sub = 0;
        EdgeId edge = -1;
        NodeId next = -1;
    };
    std::vector<std::vector<double>> dp(full + 1, std::vector<double>(n, inf));
    std::vector<std::vector<Back>> back(full + 1, std::vector<Back>(n));
    for (std::size_t i = 0; i < k; ++i) {
        const auto t = static_cast<std::size_t>(terms[i]);
        dp[std::size_t{1} << i][t] = 0.0;
        back[std::size_t{1} << i][t].kind = Back::Kind::base;
    }
    for (std::size_t mask = 1; mask <= full; ++mask) {
        auto& row = dp[mask];
        // Split at a node; the lowest set bit stays in `sub` to visit each pair once.
        const std::size_t low = mask & (~mask + 1);
        for (std::size_t sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask) {
            if (!(sub & low)) continue;
            const std::size_t rest = mask ^ sub;
            for (std::size_t v = 0; v < n; ++v) {
                const double c = dp[sub][v] + dp[rest][v];
                if (c < row[v]) {
                    row[v] = c;
                    back[mask][v] = Back{Back::Kind::merge, sub, -1, -1};
                }
            }
        }
        // Grow: a tree at v can be reached from u across arc u->v.
        for (std::size_t round = 0; round < n; ++round) {
            bool changed = false;
            for (const Edge& e : g.edges()) {
                for (int dir = 0; dir < (g.directed() ? 1 : 2); ++dir) {
                    const auto u = static_cast<std::size_t>(dir == 0 ? e.u : e.v);
                    const auto v = static_cast<std::size_t>(dir == 0 ? e.v : e.u);
                    const double c = w[e.id] + row[v];
                    if (c < row[u]) {
                        row[u] = c;
                        back[mask][u] = Back{Back::Kind::arc, 0, e.id, static_cast<NodeId>(v)};
                        changed = true;
                    }
                }
            }
            if (!changed) break;
        }
    }
    if (dp[full][static_cast<std::size_t>(root)] == inf) {
        throw UnreachableError("a multicast terminal is unreachable from " + std::to_string(root));
    }

    std::vector<char> allowed(static_cast<std::size_t>(g.edge_count()), 0);
    std::vector<std::pair<std::size_t, std::size_t>> stack{{full, static_cast<std::size_t>(root)}};
    std::size_t steps = 0;
    const std::size_t step_limit = (full + 1) * n * 4 + 16;
    while (!stack.empty()) {
        if (++steps > step_limit) {
            throw Error("steiner reconstruction did not terminate");
        }
        const auto [mask, v] = stack.back();
        stack.pop_back();
        const Back& b = back[mask][v];
        switch (b.kind) {
            case Back::Kind::merge:
                stack.emplace_back(b.sub, v);
                stack.emplace_back(mask ^ b.sub, v);
                break;
            case Back::Kind::arc:
                allowed[static_cast<std::size_t>(b.edge)] = 1;
                stack.emplace_back(mask, static_cast<std::size_t>(b.next));
                break;
            case Back::Kind::base:
            case Back::Kind::none:
                break;
        }
    }
    // Any tree inside the union costs at most the union, which is at most the optimum.
    return tree_from_subgraph(g, root, allowed, covered);
}

RouteTree steiner_approx(const Graph& g, const EdgeWeights& w, NodeId root, const std::vector<NodeId>& terms,
                         const std::vector<NodeId>& covered) {
    std::vector<char> allowed(static_cast<std::size_t>(g.edge_count()), 0);
    auto mark_path = [&](const PathLabel& lbl) {
        for (EdgeId e : lbl.seq) allowed[static_cast<std::size_t>(e)] = 1;
    };

    if (!g.directed()) {
        // Minimum spanning tree of the metric closure over root + terminals.
        std::vector<NodeId> points{root};
        points.insert(points.end(), terms.begin(), terms.end());
        std::vector<std::vector<std::optional<PathLabel>>> from;
        for (NodeId p : points) {
            const NodeId src[] = {p};
            from.push_back(best_paths(g, w, src));
        }
        const std::size_t k = points.size();
        std::vector<char> in_tree(k, 0);
        in_tree[0] = 1;
        for (std::size_t added = 1; added < k; ++added) {
            std::optional<std::pair<std::size_t, std::size_t>> best;
            for (std::size_t a = 0; a < k; ++a) {
                if (!in_tree[a]) continue;
                for (std::size_t b = 0; b < k; ++b) {
                    if (in_tree[b]) continue;
                    const auto& lbl = from[a][static_cast<std::size_t>(points[b])];
                    if (!lbl) continue;
                    if (!best || *lbl < *from[best->first][static_cast<std::size_t>(points[best->second])]) {
                        best = std::pair{a, b};
                    }
                }
            }
            if (!best) {
                throw UnreachableError("a multicast terminal is unreachable from " + std::to_string(root));
            }
            in_tree[best->second] = 1;
            mark_path(*from[best->first][static_cast<std::size_t>(points[best->second])]);
        }
        return tree_from_subgraph(g, root, allowed, covered);
    }

    // Directed: attach the nearest remaining terminal to the growing tree.
    std::vector<NodeId> tree_nodes{root};
    std::vector<NodeId> remaining = terms;
    while (!remaining.empty()) {
        const auto labels = best_paths(g, w, tree_nodes);
        std::optional<std::size_t> pick;
        for (std::size_t i = 0; i < remaining.size(); ++i) {
            const auto& lbl = labels[static_cast<std::size_t>(remaining[i])];
            if (lbl && (!pick || *lbl < *labels[static_cast<std::size_t>(remaining[*pick])])) pick = i;
        }
        if (!pick) {
            throw UnreachableError("a multicast terminal is unreachable from " + std::to_string(root));
        }
        const PathLabel& lbl = *labels[static_cast<std::size_t>(remaining[*pick])];
        mark_path(lbl);
        NodeId x = lbl.origin;
        for (EdgeId e : lbl.seq) {
            x = g.arc_from(e, x).to;
            tree_nodes.push_back(x);
        }
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(*pick));
    }
    return tree_from_subgraph(g, root, allowed, covered);
}

}  // namespace

RouteTree shortest_path_route(const Graph& g, const EdgeWeights& w, NodeId s, NodeId t) {
    check_weights(g, w);
    check_node(g, s);
    check_node(g, t);
    if (s == t) {
        return orient_tree(g, s, {}, {t});
    }
    const NodeId src[] = {s};
    const auto labels = best_paths(g, w, src);
    const auto& lbl = labels[static_cast<std::size_t>(t)];
    if (!lbl) {
        throw UnreachableError("node " + std::to_string(t) + " is unreachable from " + std::to_string(s));
    }
    return orient_tree(g, s, lbl->seq, {t});
}

RouteTree spanning_route(const Graph& g, const EdgeWeights& w, NodeId root) {
    check_weights(g, w);
    check_node(g, root);
    const int n = g.node_count();
    std::vector<EdgeId> chosen;
    if (g.directed()) {
        const int m = g.edge_count();
        std::vector<WeightedArc> arcs;
        arcs.reserve(static_cast<std::size_t>(m));
        for (const Edge& e : g.edges()) {
            // -2^(m-1-id): among equal weights, prefer sets containing smaller ids.
            Int128 tie = 0;
            if (m <= 120) {
                tie = -(static_cast<Int128>(1) << (m - 1 - e.id));
            }
            arcs.push_back(WeightedArc{e.u, e.v, Cost{w[e.id], tie}});
        }
        try {
            for (std::size_t i : min_arborescence(n, root, arcs)) chosen.push_back(static_cast<EdgeId>(i));
        } catch (const UnreachableError&) {
            throw UnreachableError("graph has nodes unreachable from " + std::to_string(root));
        }
    } else {
        // Kruskal in (weight, id) order yields the lexicographically smallest minimum tree.
        std::vector<EdgeId> order(static_cast<std::size_t>(g.edge_count()));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) { return w[a] < w[b]; });
        std::vector<int> uf(static_cast<std::size_t>(n));
        std::iota(uf.begin(), uf.end(), 0);
        auto find = [&](int x) {
            while (uf[static_cast<std::size_t>(x)] != x) {
                uf[static_cast<std::size_t>(x)] = uf[static_cast<std::size_t>(uf[static_cast<std::size_t>(x)])];
                x = uf[static_cast<std::size_t>(x)];
            }
            return x;
        };
        for (EdgeId e : order) {
            const int a = find(g.edge(e).u);
            const int b = find(g.edge(e).v);
            if (a == b) continue;
            uf[static_cast<std::size_t>(a)] = b;
            chosen.push_back(e);
        }
        if (static_cast<int>(chosen.size()) != n - 1) {
            throw UnreachableError("graph is disconnected");
        }
    }
    return orient_tree(g, root, chosen, all_nodes(g));
}

RouteTree steiner_route(const Graph& g, const EdgeWeights& w, NodeId root, std::span<const NodeId> terminals,
                        SteinerMode mode, int cap) {
    check_weights(g, w);
    check_node(g, root);
    std::vector<NodeId> covered(terminals.begin(), terminals.end());
    for (NodeId t : covered) check_node(g, t);
    std::sort(covered.begin(), covered.end());
    covered.erase(std::unique(covered.begin(), covered.end()), covered.end());
    std::vector<NodeId> terms;
    std::copy_if(covered.begin(), covered.end(), std::back_inserter(terms), [root](NodeId t) { return t != root; });
    if (terms.empty()) {
        return orient_tree(g, root, {}, covered);
    }
    if (mode == SteinerMode::exact) {
        if (static_cast<int>(terms.size()) > cap) {
            throw CapExceededError("exact Steiner over " + std::to_string(terms.size()) + " terminals", cap);
        }
        return steiner_exact(g, w, root, terms, covered);
    }
    return steiner_approx(g, w, root, terms, covered);
}

RouteTree anycast_route(const Graph& g, const EdgeWeights& w, NodeId s, std::span<const NodeId> dests) {
    check_weights(g, w);
    check_node(g, s);
    const NodeId src[] = {s};
    const auto labels = best_paths(g, w, src);
    std::vector<NodeId> sorted(dests.begin(), dests.end());
    std::sort(sorted.begin(), sorted.end());
    std::optional<NodeId> best;
    for (NodeId d : sorted) {
        check_node(g, d);
        const auto& lbl = labels[static_cast<std::size_t>(d)];
        if (!lbl) continue;
        if (!best || lbl->cost < labels[static_cast<std::size_t>(*best)]->cost) best = d;
    }
    if (!best) {
        throw UnreachableError("no anycast destination is reachable from " + std::to_string(s));
    }
    return orient_tree(g, s, labels[static_cast<std::size_t>(*best)]->seq, {*best});
}

RouteTree solve_route(const Graph& g, const EdgeWeights& w, const TrafficClass& cls, const RoutingOptions& opts) {
    switch (cls.kind) {
        case FlowKind::unicast:
            return shortest_path_route(g, w, cls.source, cls.destinations.at(0));
        case FlowKind::broadcast:
            return spanning_route(g, w, cls.source);
        case FlowKind::multicast: {
            const auto terminal_count =
                std::count_if(cls.destinations.begin(), cls.destinations.end(), [&](NodeId d) { return d != cls.source; });
            const SteinerMode mode =
                (opts.steiner_mode == SteinerMode::exact && terminal_count <= opts.steiner_cap) ? SteinerMode::exact
                                                                                                 : SteinerMode::approx;
            return steiner_route(g, w, cls.source, cls.destinations, mode, opts.steiner_cap);
        }
        case FlowKind::anycast:
            return anycast_route(g, w, cls.source, cls.destinations);
    }
    throw Error("unknown flow kind");
}

}  // namespace umw
