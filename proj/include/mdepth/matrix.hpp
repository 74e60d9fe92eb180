#pragma once

#include <initializer_list>
#include <optional>
#include <vector>

#include "mdepth/field.hpp"

namespace mdepth {

/// Vector over GF(p).  Entries are reduced residues.
class Vec {
public:
    Vec(const Field& f, std::vector<Scalar> entries);
    /// Convenience builder for literals; every entry must lie in [0, p).
    Vec(const Field& f, std::initializer_list<int> entries);

    static Vec zero(const Field& f, int dim);
    static Vec unit(const Field& f, int dim, int index);

    const Field& field() const { return field_; }
    int dim() const { return static_cast<int>(e_.size()); }
    Scalar operator[](int i) const { return e_[static_cast<size_t>(i)]; }
    Scalar& operator[](int i) { return e_[static_cast<size_t>(i)]; }
    const std::vector<Scalar>& entries() const { return e_; }

    bool is_zero() const;
    /// Index of the first nonzero entry, or -1 for the zero vector.
    int leading_index() const;

    bool operator==(const Vec& o) const { return field_ == o.field_ && e_ == o.e_; }
    bool operator!=(const Vec& o) const { return !(*this == o); }
    /// Lexicographic order on entry sequences; used for deterministic tie-breaking.
    bool operator<(const Vec& o) const { return e_ < o.e_; }

private:
    Field field_;
    std::vector<Scalar> e_;
};

Scalar dot(const Vec& a, const Vec& b);

/// Dense matrix over GF(p), row-major.  Zero rows and zero columns are legal.
class Matrix {
public:
    Matrix(const Field& f, int rows, int cols);
    Matrix(const Field& f, std::vector<std::vector<int>> rows);

    static Matrix identity(const Field& f, int n);
    static Matrix from_rows(const Field& f, const std::vector<Vec>& rows, int cols);
    static Matrix from_cols(const Field& f, const std::vector<Vec>& cols, int rows);

    const Field& field() const { return field_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Scalar at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }
    Scalar& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }

    Vec row(int r) const;
    Vec col(int c) const;
    std::vector<Vec> row_vectors() const;
    std::vector<Vec> col_vectors() const;

    /// Column submatrix; indices must be valid and are taken in the given order.
    Matrix select_cols(const std::vector<int>& indices) const;
    /// Copy with one extra row appended at the bottom.
    Matrix with_row_appended(const Vec& v) const;
    /// Copy without the given row.
    Matrix without_row(int r) const;

    bool is_zero() const;
    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

private:
    Field field_;
    int rows_;
    int cols_;
    std::vector<Scalar> a_;
};

struct RrefResult {
    Matrix reduced;
    std::vector<int> pivot_cols; // ascending
    int rank;
};

/// Reduced row echelon form.  Unique for a given row space, hence usable as a
/// canonical representative of that space.
RrefResult rref(const Matrix& a);

int rank_of(const Matrix& a);

/// Canonical basis of {x : a x = 0}: one vector per free column (ascending),
/// with the free coordinate set to 1.  No inner products are involved, so the
/// construction is insensitive to isotropic vectors.
std::vector<Vec> nullspace_basis(const Matrix& a);

/// Coefficients alpha with sum_i alpha_i * generators_i = target, or nullopt
/// if target is outside the span.  Free coefficients are fixed to 0, so the
/// answer is deterministic.
std::optional<std::vector<Scalar>> solve_in_span(const Vec& target,
                                                 const std::vector<Vec>& generators);

bool in_span(const Vec& target, const std::vector<Vec>& generators);

/// Invertible dim x dim matrix whose first column is v; the remaining columns
/// are standard basis vectors taken in ascending index order, skipping any
/// that are dependent on the columns already chosen.  Requires v != 0.
Matrix extend_to_basis(const Vec& v, int dim);

Matrix multiply(const Matrix& a, const Matrix& b);
Vec multiply(const Matrix& a, const Vec& x);
Matrix transpose(const Matrix& a);

/// Gauss-Jordan inverse; throws InputError if the matrix is singular.
Matrix inverse(const Matrix& a);

/// All vectors of F^dim in base-p counting order (first coordinate most
/// significant), which coincides with lexicographic order.
std::vector<Vec> all_vectors(const Field& f, int dim);

/// One representative per projective point: the scaling with first nonzero
/// coordinate 1, listed in lexicographic order.
std::vector<Vec> projective_points(const Field& f, int dim);

} // namespace mdepth
