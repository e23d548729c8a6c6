#pragma once

#include <utility>
#include <vector>

namespace nodal {

using Edge = std::pair<int, int>;  // canonical form (r, s) with r < s

// Simple connected graph on 0-based vertices. Immutable after build_graph.
struct Graph {
    int n = 0;
    std::vector<Edge> edges;                 // strictly sorted lexicographically
    std::vector<std::vector<int>> adjacency; // ascending neighbor lists

    int edge_count() const { return static_cast<int>(edges.size()); }
    // Index into edges for the canonical pair, or -1.
    int edge_index(int r, int s) const;
    bool has_edge(int r, int s) const { return edge_index(r, s) >= 0; }
};

// Spanning tree plus fundamental cycle data. The representative edge of cycle j
// is its unique non-tree edge; representative order (lexicographic) fixes the
// basis of the flux torus once and for all.
struct CycleStructure {
    std::vector<Edge> tree_edges;                    // n-1 edges, sorted
    std::vector<std::vector<int>> fundamental_cycles; // vertex sequences, implicitly closed
    std::vector<Edge> representative_edges;          // beta edges, sorted
    int beta = 0;
    bool disjoint = false;                           // no two simple cycles share a vertex
};

// Validates and canonicalizes. Throws InputError on duplicate edges, self-loops,
// out-of-range vertices, disconnected input, or n outside [1, 64].
Graph build_graph(int n, const std::vector<Edge>& edge_list);

// Deterministic: BFS spanning tree from vertex 0 with ascending neighbor order.
// Fundamental cycle j starts with its representative edge (r_j, s_j) traversed
// r_j -> s_j, then closes through the tree.
CycleStructure analyze_cycles(const Graph& g);

// True iff every biconnected block is a single edge or a simple cycle.
bool has_disjoint_cycles(const Graph& g);

// The cut edges of g, sorted.
std::vector<Edge> bridges(const Graph& g);

// Vertex sets of the two components of g minus one bridge; first component
// contains bridge.first. Throws InputError if the edge is not a bridge.
std::pair<std::vector<int>, std::vector<int>> bridge_split(const Graph& g, const Edge& bridge);

}  // namespace nodal
