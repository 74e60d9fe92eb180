#pragma once

#include <string>
#include <vector>

#include "mdepth/guards.hpp"
#include "mdepth/matrix.hpp"

namespace mdepth {

/// Ground-set element identifier.  Parsing assigns 0-based column indices;
/// minors keep the surviving labels unchanged.
using Label = int;

/// Sorted set of labels.
using LabelSet = std::vector<Label>;

std::string label_name(Label e);            // display form, e.g. "c3"
std::string label_set_name(const LabelSet&); // display form, e.g. "{c1,c3}"

/// Matroid represented by a matrix over GF(p), with optional quotient
/// semantics: a set S is dependent when some nontrivial combination of its
/// columns lies in the span of the contracted vectors.
///
/// Construction eagerly normalizes: contracted vectors are folded into the
/// matrix one at a time, and the result is kept as the reduced row echelon
/// form with zero rows removed.  The stored matrix therefore always has full
/// row rank, its row count equals the matroid's rank, and its columns span
/// the whole coordinate space.
class RepMatroid {
public:
    /// Matroid of a matrix; labels default to 0..n-1.
    static RepMatroid from_matrix(const Matrix& a);
    static RepMatroid from_matrix(const Matrix& a, std::vector<Label> labels);
    /// Quotient matroid: columns of `a` modulo the span of `contracted`.
    static RepMatroid from_matrix_with_contracted(const Matrix& a,
                                                  const std::vector<Vec>& contracted);

    const Field& field() const { return matrix_.field(); }
    /// Normalized quotient representation (full row rank, RREF).
    const Matrix& quotient() const { return matrix_; }
    const std::vector<Label>& labels() const { return labels_; }

    int size() const { return static_cast<int>(labels_.size()); }
    int rank() const { return matrix_.rows(); }
    bool empty() const { return labels_.empty(); }

    LabelSet ground_set() const;
    bool has_label(Label e) const;
    /// Column of the quotient representation carrying the given label.
    Vec column_of(Label e) const;

    bool is_independent(const LabelSet& s) const;
    int rank_of(const LabelSet& s) const;
    bool is_loop(Label e) const;

    /// Minimal dependent sets, ordered by (size, label sequence).
    std::vector<LabelSet> circuits(int max_elements = Guards{}.max_circuit_elements) const;
    /// Partition of the ground set into connected components: classes of the
    /// transitive closure of "contained in a common circuit", circuit-free
    /// elements forming singletons.  Classes are ordered by smallest label.
    std::vector<LabelSet> components(int max_elements = Guards{}.max_circuit_elements) const;
    /// True when the ground set is nonempty and forms a single component.
    bool is_connected(int max_elements = Guards{}.max_circuit_elements) const;

    /// Restriction to s (labels kept, order preserved).
    RepMatroid restrict_to(const LabelSet& s) const;
    /// Deletion of s.
    RepMatroid delete_elements(const LabelSet& s) const;
    RepMatroid delete_element(Label e) const;

    /// Quotient by one nonzero vector of the current coordinate space F^rank:
    /// a set becomes dependent as soon as a combination of its columns falls
    /// on the line spanned by v.  Realized by a basis change with first basis
    /// vector v followed by dropping the first coordinate, which lowers the
    /// rank by exactly one.
    RepMatroid contract_vector(const Vec& v) const;
    /// Standard single-element contraction; contracting a loop deletes it.
    RepMatroid contract_element(Label e) const;

    /// Memoization key: equal keys imply matroids that differ only by row
    /// operations and a relabeling of columns (hence equal depth parameters).
    /// Within `max_cols` columns the key is canonical for that equivalence:
    /// the lexicographically minimal column-major serialization of the RREF
    /// over all column orders, found by branch and bound.  Larger instances,
    /// or searches past `node_budget`, fall back to a weaker sorted-column
    /// key, marked with a distinct tag byte so the two kinds never collide.
    std::string canonical_key(int max_cols = Guards{}.max_canonical_cols,
                              long node_budget = Guards{}.canonical_node_budget) const;

private:
    RepMatroid(Matrix m, std::vector<Label> labels);

    std::vector<int> positions_of(const LabelSet& s) const;

    Matrix matrix_;
    std::vector<Label> labels_;
};

/// True when both matroids carry the same labels and agree on the
/// independence of every subset.  Exponential; intended for small instances.
bool same_independence(const RepMatroid& a, const RepMatroid& b);

} // namespace mdepth
