#include "mdepth/graph.hpp"

#include <algorithm>
#include <string>

namespace mdepth {

Graph::Graph(int n) : n_(n), adj_(static_cast<size_t>(n), 0) {
    if (n < 0 || n > 31) throw InputError("graph size out of range");
}

void Graph::add_edge(int u, int v) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_ || u == v) {
        throw InputError("invalid edge");
    }
    adj_[static_cast<size_t>(u)] |= (1u << v);
    adj_[static_cast<size_t>(v)] |= (1u << u);
}

bool Graph::has_edge(int u, int v) const {
    return u >= 0 && u < n_ && v >= 0 && v < n_ && (adj_[static_cast<size_t>(u)] >> v) & 1u;
}

std::vector<std::uint32_t> Graph::components_of(std::uint32_t mask) const {
    std::vector<std::uint32_t> out;
    std::uint32_t left = mask;
    while (left) {
        int start = __builtin_ctz(left);
        std::uint32_t comp = 0;
        std::uint32_t frontier = 1u << start;
        while (frontier) {
            comp |= frontier;
            std::uint32_t next = 0;
            std::uint32_t f = frontier;
            while (f) {
                int v = __builtin_ctz(f);
                f &= f - 1;
                next |= adj_[static_cast<size_t>(v)] & mask & ~comp;
            }
            frontier = next;
        }
        out.push_back(comp);
        left &= ~comp;
    }
    return out;
}

int EliminationForest::depth() const {
    int best = -1;
    for (size_t v = 0; v < parent.size(); ++v) {
        int d = depth_of(static_cast<int>(v));
        if (d > best) best = d;
    }
    return best;
}

int EliminationForest::depth_of(int v) const {
    int d = 0;
    while (parent[static_cast<size_t>(v)] != -1) {
        v = parent[static_cast<size_t>(v)];
        ++d;
    }
    return d;
}

bool EliminationForest::is_ancestor(int a, int v) const {
    while (v != -1) {
        if (v == a) return true;
        v = parent[static_cast<size_t>(v)];
    }
    return false;
}

namespace {

struct TdSolver {
    const Graph& g;
    std::vector<std::int8_t> memo; // tree-depth per induced vertex set

    explicit TdSolver(const Graph& graph)
        : g(graph), memo(static_cast<size_t>(1) << graph.size(), -1) {}

    int value(std::uint32_t mask) {
        if (mask == 0) return 0;
        std::int8_t& slot = memo[mask];
        if (slot >= 0) return slot;
        std::vector<std::uint32_t> comps = g.components_of(mask);
        int result;
        if (comps.size() > 1) {
            result = 0;
            for (std::uint32_t c : comps) result = std::max(result, value(c));
        } else {
            result = g.size() + 1;
            std::uint32_t m = mask;
            while (m) {
                int v = __builtin_ctz(m);
                m &= m - 1;
                result = std::min(result, 1 + value(mask & ~(1u << v)));
            }
        }
        slot = static_cast<std::int8_t>(result);
        return result;
    }

    // Rebuilds the witness by replaying the recursion with memoized values,
    // always picking the smallest minimizing vertex.
    void build(std::uint32_t mask, int parent, EliminationForest& f) {
        if (mask == 0) return;
        for (std::uint32_t comp : g.components_of(mask)) {
            int target = value(comp);
            int chosen = -1;
            std::uint32_t m = comp;
            while (m) {
                int v = __builtin_ctz(m);
                m &= m - 1;
                if (1 + value(comp & ~(1u << v)) == target) {
                    chosen = v;
                    break;
                }
            }
            f.parent[static_cast<size_t>(chosen)] = parent;
            if (parent == -1) f.roots.push_back(chosen);
            build(comp & ~(1u << chosen), chosen, f);
        }
    }
};

} // namespace

TreeDepthResult tree_depth(const Graph& g, int max_vertices) {
    if (g.size() > max_vertices) {
        throw GuardError("tree-depth refused: " + std::to_string(g.size()) +
                         " vertices exceed the guard of " + std::to_string(max_vertices));
    }
    TdSolver solver(g);
    std::uint32_t all = g.size() == 0 ? 0 : (1u << g.size()) - 1;
    int value = solver.value(all);
    EliminationForest forest;
    forest.parent.assign(static_cast<size_t>(g.size()), -1);
    solver.build(all, -1, forest);
    return TreeDepthResult{value, std::move(forest)};
}

bool forest_covers(const Graph& g, const EliminationForest& f) {
    for (int u = 0; u < g.size(); ++u) {
        for (int v = u + 1; v < g.size(); ++v) {
            if (!g.has_edge(u, v)) continue;
            if (!f.is_ancestor(u, v) && !f.is_ancestor(v, u)) return false;
        }
    }
    return true;
}

} // namespace mdepth
