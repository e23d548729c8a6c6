#include "nodal/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <string>

#include "nodal/errors.hpp"

namespace nodal {

namespace {

constexpr int kMaxVertices = 64;  // enumeration-scale tool

std::vector<int> bfs_order_from(const Graph& g, int start) {
    std::vector<int> seen;
    std::vector<char> visited(g.n, 0);
    std::deque<int> queue{start};
    visited[start] = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        seen.push_back(v);
        for (int w : g.adjacency[v]) {
            if (!visited[w]) {
                visited[w] = 1;
                queue.push_back(w);
            }
        }
    }
    return seen;
}

// Hopcroft-Tarjan biconnected components; returns blocks as edge-index lists.
std::vector<std::vector<int>> biconnected_blocks(const Graph& g) {
    std::vector<int> disc(g.n, -1), low(g.n, -1);
    std::vector<int> edge_stack;
    std::vector<std::vector<int>> blocks;
    int timer = 0;

    std::function<void(int, int)> dfs = [&](int u, int parent_edge) {
        disc[u] = low[u] = timer++;
        for (int w : g.adjacency[u]) {
            int e = g.edge_index(std::min(u, w), std::max(u, w));
            if (e == parent_edge) continue;
            if (disc[w] == -1) {
                edge_stack.push_back(e);
                dfs(w, e);
                low[u] = std::min(low[u], low[w]);
                if (low[w] >= disc[u]) {
                    // u is an articulation point (or root): pop one block.
                    std::vector<int> block;
                    while (!edge_stack.empty() && edge_stack.back() != e) {
                        block.push_back(edge_stack.back());
                        edge_stack.pop_back();
                    }
                    block.push_back(edge_stack.back());
                    edge_stack.pop_back();
                    blocks.push_back(std::move(block));
                }
            } else if (disc[w] < disc[u]) {
                edge_stack.push_back(e);
                low[u] = std::min(low[u], disc[w]);
            }
        }
    };

    dfs(0, -1);
    return blocks;
}

}  // namespace

int Graph::edge_index(int r, int s) const {
    Edge key{r, s};
    auto it = std::lower_bound(edges.begin(), edges.end(), key);
    if (it != edges.end() && *it == key) return static_cast<int>(it - edges.begin());
    return -1;
}

Graph build_graph(int n, const std::vector<Edge>& edge_list) {
    if (n < 1) throw InputError("vertex count must be >= 1");
    if (n > kMaxVertices)
        throw InputError("vertex count " + std::to_string(n) + " exceeds limit " +
                         std::to_string(kMaxVertices));

    Graph g;
    g.n = n;
    g.edges.reserve(edge_list.size());
    for (const auto& [a, b] : edge_list) {
        if (a == b)
            throw InputError("self-loop at vertex " + std::to_string(a));
        if (a < 0 || b < 0 || a >= n || b >= n)
            throw InputError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                             ") out of range for n=" + std::to_string(n));
        g.edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(g.edges.begin(), g.edges.end());
    auto dup = std::adjacent_find(g.edges.begin(), g.edges.end());
    if (dup != g.edges.end())
        throw InputError("duplicate edge (" + std::to_string(dup->first) + "," +
                         std::to_string(dup->second) + ")");

    g.adjacency.assign(n, {});
    for (const auto& [r, s] : g.edges) {
        g.adjacency[r].push_back(s);
        g.adjacency[s].push_back(r);
    }
    for (auto& nb : g.adjacency) std::sort(nb.begin(), nb.end());

    if (static_cast<int>(bfs_order_from(g, 0).size()) != n)
        throw InputError("graph is not connected");
    return g;
}

CycleStructure analyze_cycles(const Graph& g) {
    CycleStructure cs;

    // BFS tree from vertex 0, neighbors in ascending order.
    std::vector<int> parent(g.n, -1);
    std::vector<char> visited(g.n, 0);
    std::deque<int> queue{0};
    visited[0] = 1;
    std::vector<char> edge_in_tree(g.edges.size(), 0);
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : g.adjacency[v]) {
            if (!visited[w]) {
                visited[w] = 1;
                parent[w] = v;
                edge_in_tree[g.edge_index(std::min(v, w), std::max(v, w))] = 1;
                queue.push_back(w);
            }
        }
    }

    for (size_t e = 0; e < g.edges.size(); ++e) {
        if (edge_in_tree[e])
            cs.tree_edges.push_back(g.edges[e]);
        else
            cs.representative_edges.push_back(g.edges[e]);  // already lex order
    }
    cs.beta = static_cast<int>(cs.representative_edges.size());

    auto path_to_root = [&](int v) {
        std::vector<int> path{v};
        while (parent[path.back()] >= 0) path.push_back(parent[path.back()]);
        return path;
    };

    for (const auto& [r, s] : cs.representative_edges) {
        std::vector<int> pr = path_to_root(r);
        std::vector<int> ps = path_to_root(s);
        // Trim the common tail above the LCA.
        while (pr.size() >= 2 && ps.size() >= 2 && pr[pr.size() - 2] == ps[ps.size() - 2]) {
            pr.pop_back();
            ps.pop_back();
        }
        // Traverse r -> s across the representative edge, then s -> lca -> r
        // through the tree. pr/ps now end at the LCA.
        std::vector<int> cycle{r, s};
        cycle.insert(cycle.end(), ps.begin() + 1, ps.end());
        cycle.insert(cycle.end(), pr.rbegin() + 1, pr.rend() - 1);
        cs.fundamental_cycles.push_back(std::move(cycle));
    }

    cs.disjoint = has_disjoint_cycles(g);
    return cs;
}

bool has_disjoint_cycles(const Graph& g) {
    for (const auto& block : biconnected_blocks(g)) {
        if (block.size() == 1) continue;
        std::vector<int> deg(g.n, 0);
        int nv = 0;
        for (int e : block) {
            if (deg[g.edges[e].first]++ == 0) ++nv;
            if (deg[g.edges[e].second]++ == 0) ++nv;
        }
        // A biconnected block is a simple cycle iff |E| == |V|.
        if (static_cast<int>(block.size()) != nv) return false;
    }
    return true;
}

std::vector<Edge> bridges(const Graph& g) {
    std::vector<Edge> out;
    for (const auto& block : biconnected_blocks(g))
        if (block.size() == 1) out.push_back(g.edges[block[0]]);
    std::sort(out.begin(), out.end());
    return out;
}

std::pair<std::vector<int>, std::vector<int>> bridge_split(const Graph& g, const Edge& bridge) {
    int be = g.edge_index(bridge.first, bridge.second);
    if (be < 0) throw InputError("bridge_split: not an edge of the graph");

    std::vector<char> visited(g.n, 0);
    std::deque<int> queue{bridge.first};
    visited[bridge.first] = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : g.adjacency[v]) {
            int e = g.edge_index(std::min(v, w), std::max(v, w));
            if (e == be || visited[w]) continue;
            visited[w] = 1;
            queue.push_back(w);
        }
    }
    if (visited[bridge.second]) throw InputError("bridge_split: edge is not a bridge");

    std::vector<int> side_a, side_b;
    for (int v = 0; v < g.n; ++v) (visited[v] ? side_a : side_b).push_back(v);
    return {side_a, side_b};
}

}  // namespace nodal
