#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mdepth/guards.hpp"
#include "mdepth/matrix.hpp"

namespace mdepth {

/// Node of a matrix tree.  Exactly one node is the root (parent -1, kind
/// Root).  Every other node is either a row node or a column node; column
/// nodes are leaves and carry one entry label (i, alpha) for every distance
/// i = 0..k-1 to the root, where k is the node's own root distance.
struct TreeNode {
    int id = 0;
    int parent = -1;
    enum class Kind { Root, Row, Column } kind = Kind::Root;
    std::vector<std::pair<int, Scalar>> entry_labels; // sorted by distance
};

/// Tree encoding of a matrix.  The stored node order is significant: decoding
/// reads rows and columns in this order, so the encoder lists row nodes in
/// original row order and column nodes in original column order.
class MatrixTree {
public:
    MatrixTree(const Field& f, std::vector<TreeNode> nodes);

    const Field& field() const { return field_; }
    const std::vector<TreeNode>& nodes() const { return nodes_; }
    int root_id() const;

    bool has_node(int id) const;
    const TreeNode& node(int id) const;
    /// Distance from the root.
    int distance_of(int id) const;
    /// Longest root-to-node distance over all nodes.
    int depth() const;
    bool is_ancestor(int a, int b) const; // a == b counts as an ancestor

    /// Structural checks; throws InputError naming the offending node.
    void validate() const;

private:
    Field field_;
    std::vector<TreeNode> nodes_;
    std::vector<int> order_;   // index into nodes_ by id lookup
    int root_ = -1;

    int index_of(int id) const;
};

/// Matrix encoded by the tree: rows are the row nodes, columns the column
/// nodes (both in stored order); entry (r, c) is zero unless r is an ancestor
/// of c, in which case it is the alpha of c's label at r's root distance.
Matrix decode(const MatrixTree& t);

/// Tree encoding of a: an optimal elimination forest of the row-interaction
/// graph is hung under a fresh root, and each column becomes a leaf under the
/// deepest row of its support (under the root when the column is zero).
/// Ancestor rows outside the support get explicit zero labels, and the label
/// at distance 0 is always (0, 0).  Round-trips bit-exactly through decode,
/// with depth at most the dual tree-depth of a plus one.
MatrixTree encode(const Matrix& a, const Guards& guards = {});

/// Removes every column leaf in the subtree rooted at node_id.
MatrixTree drop_column_leaves(const MatrixTree& t, int node_id);

/// Removes the whole subtrees rooted at the given nodes.  The root itself
/// cannot be pruned.
MatrixTree prune(const MatrixTree& t, const std::vector<int>& node_ids);

} // namespace mdepth
