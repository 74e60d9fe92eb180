#pragma once

#include "mdepth/matroid.hpp"

namespace mdepth {

/// Dual matroid on the same ground set, represented by a basis of the
/// orthogonal complement of the row space.  Computed from the nullspace;
/// no orthogonal decomposition is involved, so self-orthogonal row spaces
/// are handled exactly like any other.
RepMatroid dual(const RepMatroid& m);

/// A matroid viewed through its row space W <= F^n: element i is the i-th
/// coordinate, and independence is that of the corresponding columns of any
/// basis matrix of W.  This view makes the two subspace moves below natural:
/// shrinking W by a hyperplane and growing W by one vector.
class SubspaceMatroid {
public:
    /// Subspace spanned by the rows of a; labels default to 0..n-1.
    static SubspaceMatroid from_row_space(const Matrix& a);
    static SubspaceMatroid from_row_space(const Matrix& a, std::vector<Label> labels);
    static SubspaceMatroid from_matroid(const RepMatroid& m);

    const Field& field() const { return basis_.field(); }
    /// Canonical (RREF) basis of W, one row per basis vector.
    const Matrix& basis() const { return basis_; }
    const std::vector<Label>& labels() const { return labels_; }
    int ambient_dimension() const { return basis_.cols(); }
    int dimension() const { return basis_.rows(); }

    RepMatroid as_matroid() const;

    bool contains(const Vec& v) const;        // v in W
    bool orthogonal_contains(const Vec& v) const; // v in the orthogonal complement of W

    bool operator==(const SubspaceMatroid& o) const {
        return basis_ == o.basis_ && labels_ == o.labels_;
    }
    bool operator!=(const SubspaceMatroid& o) const { return !(*this == o); }

private:
    SubspaceMatroid(Matrix basis, std::vector<Label> labels);

    Matrix basis_;
    std::vector<Label> labels_;
};

/// Dual on the subspace view: the orthogonal complement W^perp.
SubspaceMatroid dual(const SubspaceMatroid& s);

/// W ∩ {x : <x, v> = 0}: the kernel of the linear functional <., v> on W.
/// If v is orthogonal to all of W the space is unchanged; otherwise the
/// dimension drops by exactly one.
SubspaceMatroid contract_hyperplane(const SubspaceMatroid& s, const Vec& v);

/// span(W ∪ {v}), i.e. the row space after appending v as a row.
SubspaceMatroid adjoin_vector(const SubspaceMatroid& s, const Vec& v);

} // namespace mdepth
