#include "mdepth/duality.hpp"

#include <numeric>

namespace mdepth {

namespace {

Matrix row_space_basis(const Matrix& a) {
    RrefResult r = rref(a);
    Matrix m(a.field(), r.rank, a.cols());
    for (int i = 0; i < r.rank; ++i)
        for (int c = 0; c < a.cols(); ++c) m.at(i, c) = r.reduced.at(i, c);
    return m;
}

} // namespace

RepMatroid dual(const RepMatroid& m) {
    std::vector<Vec> basis = nullspace_basis(m.quotient());
    Matrix rows = Matrix::from_rows(m.field(), basis, m.size());
    return RepMatroid::from_matrix(rows, m.labels());
}

SubspaceMatroid::SubspaceMatroid(Matrix basis, std::vector<Label> labels)
    : basis_(std::move(basis)), labels_(std::move(labels)) {}

SubspaceMatroid SubspaceMatroid::from_row_space(const Matrix& a) {
    std::vector<Label> labels(static_cast<size_t>(a.cols()));
    std::iota(labels.begin(), labels.end(), 0);
    return from_row_space(a, std::move(labels));
}

SubspaceMatroid SubspaceMatroid::from_row_space(const Matrix& a, std::vector<Label> labels) {
    if (static_cast<int>(labels.size()) != a.cols()) {
        throw InputError("label count must match the ambient dimension");
    }
    return SubspaceMatroid(row_space_basis(a), std::move(labels));
}

SubspaceMatroid SubspaceMatroid::from_matroid(const RepMatroid& m) {
    // The normalized representation is already an RREF basis of the row space.
    return SubspaceMatroid(m.quotient(), m.labels());
}

RepMatroid SubspaceMatroid::as_matroid() const {
    return RepMatroid::from_matrix(basis_, labels_);
}

bool SubspaceMatroid::contains(const Vec& v) const {
    if (v.dim() != ambient_dimension()) {
        throw InputError("vector dimension does not match the ambient space");
    }
    return in_span(v, basis_.row_vectors());
}

bool SubspaceMatroid::orthogonal_contains(const Vec& v) const {
    if (v.dim() != ambient_dimension()) {
        throw InputError("vector dimension does not match the ambient space");
    }
    return multiply(basis_, v).is_zero();
}

SubspaceMatroid dual(const SubspaceMatroid& s) {
    std::vector<Vec> basis = nullspace_basis(s.basis());
    Matrix rows = Matrix::from_rows(s.field(), basis, s.ambient_dimension());
    return SubspaceMatroid::from_row_space(rows, s.labels());
}

SubspaceMatroid contract_hyperplane(const SubspaceMatroid& s, const Vec& v) {
    if (v.dim() != s.ambient_dimension()) {
        throw InputError("vector dimension does not match the ambient space");
    }
    // Express the functional <., v> in basis coordinates: w in W is c * B for
    // a coefficient row c, and <w, v> = c * (B v).  The kernel of c -> c*(Bv)
    // pulled back through B is the sought subspace.
    Vec bv = multiply(s.basis(), v);
    if (bv.is_zero()) return s; // v orthogonal to W: nothing to cut
    Matrix functional = Matrix::from_rows(s.field(), {bv}, bv.dim());
    std::vector<Vec> kernel = nullspace_basis(functional);
    std::vector<Vec> new_rows;
    new_rows.reserve(kernel.size());
    Matrix bt = transpose(s.basis());
    for (const Vec& c : kernel) new_rows.push_back(multiply(bt, c));
    Matrix rows = Matrix::from_rows(s.field(), new_rows, s.ambient_dimension());
    return SubspaceMatroid::from_row_space(rows, s.labels());
}

SubspaceMatroid adjoin_vector(const SubspaceMatroid& s, const Vec& v) {
    if (v.dim() != s.ambient_dimension()) {
        throw InputError("vector dimension does not match the ambient space");
    }
    return SubspaceMatroid::from_row_space(s.basis().with_row_appended(v), s.labels());
}

} // namespace mdepth
