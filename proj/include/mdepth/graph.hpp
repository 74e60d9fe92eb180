#pragma once

#include <cstdint>
#include <vector>

#include "mdepth/guards.hpp"

namespace mdepth {

/// Simple undirected graph on vertices 0..n-1, adjacency kept as bitmasks.
/// Sized for the exact tree-depth solver (at most 18 vertices there).
class Graph {
public:
    explicit Graph(int n);

    int size() const { return n_; }
    void add_edge(int u, int v);
    bool has_edge(int u, int v) const;
    std::uint32_t neighbors(int v) const { return adj_[static_cast<size_t>(v)]; }

    /// Connected components of the subgraph induced by `mask`.
    std::vector<std::uint32_t> components_of(std::uint32_t mask) const;

    bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

private:
    int n_;
    std::vector<std::uint32_t> adj_;
};

/// Rooted forest on the graph's vertices, as produced by the tree-depth
/// solver.  depth() is the maximal number of edges on a root-leaf path
/// (-1 for the empty forest), so tree-depth = depth() + 1.
struct EliminationForest {
    std::vector<int> parent; // parent[v], or -1 for roots
    std::vector<int> roots;  // ascending

    int depth() const;
    int depth_of(int v) const; // edges from v to its root
    bool is_ancestor(int a, int v) const;
};

struct TreeDepthResult {
    int value;
    EliminationForest forest;
};

/// Exact tree-depth with a witness forest:
///   empty graph -> 0; disconnected -> max over components;
///   connected -> 1 + min over single-vertex removals.
/// The witness puts the removed vertex above the forests of the remaining
/// components; ties pick the smallest vertex, so the result is deterministic.
/// Throws GuardError when the graph has more than max_vertices vertices.
TreeDepthResult tree_depth(const Graph& g, int max_vertices = Guards{}.max_td_vertices);

/// True when every edge of g joins two vertices on a common root-leaf path of
/// the forest, i.e. the forest's closure contains g.
bool forest_covers(const Graph& g, const EliminationForest& f);

} // namespace mdepth
