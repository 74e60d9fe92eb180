#include "mdepth/matrix_tree.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "mdepth/depth.hpp"
#include "mdepth/graph.hpp"

namespace mdepth {

namespace {

std::string node_ref(int id) {
    return "node " + std::to_string(id);
}

} // namespace

MatrixTree::MatrixTree(const Field& f, std::vector<TreeNode> nodes)
    : field_(f), nodes_(std::move(nodes)) {
    for (size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i].parent == -1) {
            if (root_ != -1) throw InputError("matrix tree has more than one root");
            root_ = nodes_[i].id;
        }
    }
    if (nodes_.empty() || root_ == -1) throw InputError("matrix tree needs a root node");
}

int MatrixTree::root_id() const {
    return root_;
}

int MatrixTree::index_of(int id) const {
    for (size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i].id == id) return static_cast<int>(i);
    }
    throw InputError("unknown tree node " + std::to_string(id));
}

bool MatrixTree::has_node(int id) const {
    for (const TreeNode& n : nodes_) {
        if (n.id == id) return true;
    }
    return false;
}

const TreeNode& MatrixTree::node(int id) const {
    return nodes_[static_cast<size_t>(index_of(id))];
}

int MatrixTree::distance_of(int id) const {
    int d = 0;
    int cur = id;
    while (node(cur).parent != -1) {
        cur = node(cur).parent;
        ++d;
        if (d > static_cast<int>(nodes_.size())) {
            throw InputError("matrix tree contains a parent cycle at " + node_ref(id));
        }
    }
    return d;
}

int MatrixTree::depth() const {
    int best = 0;
    for (const TreeNode& n : nodes_) best = std::max(best, distance_of(n.id));
    return best;
}

bool MatrixTree::is_ancestor(int a, int b) const {
    int cur = b;
    int steps = 0;
    while (true) {
        if (cur == a) return true;
        int parent = node(cur).parent;
        if (parent == -1) return false;
        cur = parent;
        if (++steps > static_cast<int>(nodes_.size())) {
            throw InputError("matrix tree contains a parent cycle at " + node_ref(b));
        }
    }
}

void MatrixTree::validate() const {
    std::set<int> ids;
    for (const TreeNode& n : nodes_) {
        if (!ids.insert(n.id).second) {
            throw InputError("duplicate id at " + node_ref(n.id));
        }
    }
    std::set<int> with_children;
    for (const TreeNode& n : nodes_) {
        if (n.parent != -1) {
            if (ids.count(n.parent) == 0) {
                throw InputError(node_ref(n.id) + " refers to a missing parent");
            }
            with_children.insert(n.parent);
        }
        if ((n.parent == -1) != (n.kind == TreeNode::Kind::Root)) {
            throw InputError(node_ref(n.id) + " mixes root kind and parent link");
        }
    }
    for (const TreeNode& n : nodes_) {
        int k = distance_of(n.id); // also rejects cycles
        switch (n.kind) {
            case TreeNode::Kind::Root:
            case TreeNode::Kind::Row:
                if (!n.entry_labels.empty()) {
                    throw InputError(node_ref(n.id) + " carries entry labels but is not a column");
                }
                break;
            case TreeNode::Kind::Column: {
                if (with_children.count(n.id)) {
                    throw InputError(node_ref(n.id) + " is a column but not a leaf");
                }
                if (static_cast<int>(n.entry_labels.size()) != k) {
                    throw InputError(node_ref(n.id) + " needs exactly one entry label per root distance");
                }
                for (int i = 0; i < k; ++i) {
                    if (n.entry_labels[static_cast<size_t>(i)].first != i) {
                        throw InputError(node_ref(n.id) + " is missing the entry label at distance " +
                                         std::to_string(i));
                    }
                    if (n.entry_labels[static_cast<size_t>(i)].second >= field_.modulus()) {
                        throw InputError(node_ref(n.id) + " has an entry outside the field");
                    }
                }
                break;
            }
        }
    }
}

Matrix decode(const MatrixTree& t) {
    t.validate();
    std::vector<int> rows, cols;
    for (const TreeNode& n : t.nodes()) {
        if (n.kind == TreeNode::Kind::Row) rows.push_back(n.id);
        if (n.kind == TreeNode::Kind::Column) cols.push_back(n.id);
    }
    Matrix a(t.field(), static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (int c = 0; c < a.cols(); ++c) {
        const TreeNode& col = t.node(cols[static_cast<size_t>(c)]);
        for (int r = 0; r < a.rows(); ++r) {
            int row_id = rows[static_cast<size_t>(r)];
            if (!t.is_ancestor(row_id, col.id)) continue;
            int i = t.distance_of(row_id); // >= 1: the root is not a row
            a.at(r, c) = col.entry_labels[static_cast<size_t>(i)].second;
        }
    }
    return a;
}

MatrixTree encode(const Matrix& a, const Guards& guards) {
    const int h = a.rows();
    const int n = a.cols();
    TreeDepthResult td = dual_tree_depth_witness(a, guards);
    const EliminationForest& forest = td.forest;

    // ids: 0 is the root, 1..h the rows, h+1..h+n the columns.
    std::vector<TreeNode> nodes;
    nodes.reserve(static_cast<size_t>(1 + h + n));
    nodes.push_back(TreeNode{0, -1, TreeNode::Kind::Root, {}});
    for (int r = 0; r < h; ++r) {
        int parent = forest.parent[static_cast<size_t>(r)];
        nodes.push_back(TreeNode{1 + r, parent == -1 ? 0 : 1 + parent, TreeNode::Kind::Row, {}});
    }
    // Distance of a row node from the root of the tree (forest depth + 1).
    auto row_distance = [&](int r) { return forest.depth_of(r) + 1; };
    for (int c = 0; c < n; ++c) {
        // The support rows of a column are pairwise adjacent in the
        // row-interaction graph, hence totally ordered by ancestry in the
        // elimination forest; the deepest one becomes the column's parent.
        int deepest = -1;
        for (int r = 0; r < h; ++r) {
            if (a.at(r, c) == 0) continue;
            if (deepest == -1 || row_distance(r) > row_distance(deepest)) deepest = r;
        }
        TreeNode node;
        node.id = 1 + h + c;
        node.parent = deepest == -1 ? 0 : 1 + deepest;
        node.kind = TreeNode::Kind::Column;
        int k = deepest == -1 ? 1 : row_distance(deepest) + 1;
        node.entry_labels.reserve(static_cast<size_t>(k));
        node.entry_labels.push_back({0, 0}); // the root carries no row
        if (deepest != -1) {
            // Walk the ancestor rows and record their entries, zeros included.
            std::vector<int> chain; // ancestor row at each distance 1..k-1
            for (int r = deepest; r != -1; r = forest.parent[static_cast<size_t>(r)]) {
                chain.push_back(r);
            }
            std::reverse(chain.begin(), chain.end());
            for (size_t i = 0; i < chain.size(); ++i) {
                node.entry_labels.push_back(
                    {static_cast<int>(i) + 1, a.at(chain[i], c)});
            }
        }
        nodes.push_back(std::move(node));
    }
    MatrixTree t(a.field(), std::move(nodes));
    t.validate();
    return t;
}

namespace {

std::vector<bool> subtree_mask(const MatrixTree& t, const std::vector<int>& roots) {
    for (int id : roots) {
        if (!t.has_node(id)) throw InputError("unknown tree node " + std::to_string(id));
    }
    std::vector<bool> in(t.nodes().size(), false);
    for (size_t i = 0; i < t.nodes().size(); ++i) {
        for (int id : roots) {
            if (t.is_ancestor(id, t.nodes()[i].id)) {
                in[i] = true;
                break;
            }
        }
    }
    return in;
}

} // namespace

MatrixTree drop_column_leaves(const MatrixTree& t, int node_id) {
    std::vector<bool> in = subtree_mask(t, {node_id});
    std::vector<TreeNode> keep;
    for (size_t i = 0; i < t.nodes().size(); ++i) {
        const TreeNode& n = t.nodes()[i];
        if (in[i] && n.kind == TreeNode::Kind::Column) continue;
        keep.push_back(n);
    }
    return MatrixTree(t.field(), std::move(keep));
}

MatrixTree prune(const MatrixTree& t, const std::vector<int>& node_ids) {
    for (int id : node_ids) {
        if (t.has_node(id) && id == t.root_id()) {
            throw InputError("the root cannot be pruned");
        }
    }
    std::vector<bool> in = subtree_mask(t, node_ids);
    std::vector<TreeNode> keep;
    for (size_t i = 0; i < t.nodes().size(); ++i) {
        if (!in[i]) keep.push_back(t.nodes()[i]);
    }
    return MatrixTree(t.field(), std::move(keep));
}

} // namespace mdepth
