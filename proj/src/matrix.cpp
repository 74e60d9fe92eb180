#include "mdepth/matrix.hpp"

#include <string>

namespace mdepth {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw InputError(what);
}

} // namespace

Vec::Vec(const Field& f, std::vector<Scalar> entries) : field_(f), e_(std::move(entries)) {
    for (Scalar x : e_) {
        require(x < field_.modulus(), "vector entry out of range for GF(" +
                                          std::to_string(field_.modulus()) + ")");
    }
}

Vec::Vec(const Field& f, std::initializer_list<int> entries) : field_(f) {
    e_.reserve(entries.size());
    for (int x : entries) {
        require(x >= 0 && x < f.modulus(), "vector entry out of range for GF(" +
                                               std::to_string(f.modulus()) + ")");
        e_.push_back(static_cast<Scalar>(x));
    }
}

Vec Vec::zero(const Field& f, int dim) {
    require(dim >= 0, "vector dimension must be nonnegative");
    return Vec(f, std::vector<Scalar>(static_cast<size_t>(dim), 0));
}

Vec Vec::unit(const Field& f, int dim, int index) {
    require(index >= 0 && index < dim, "unit vector index out of range");
    Vec v = zero(f, dim);
    v[index] = 1;
    return v;
}

bool Vec::is_zero() const {
    for (Scalar x : e_) {
        if (x != 0) return false;
    }
    return true;
}

int Vec::leading_index() const {
    for (int i = 0; i < dim(); ++i) {
        if (e_[static_cast<size_t>(i)] != 0) return i;
    }
    return -1;
}

Scalar dot(const Vec& a, const Vec& b) {
    require(a.field() == b.field(), "dot product over mismatched fields");
    require(a.dim() == b.dim(), "dot product of vectors with different dimensions");
    const Field& f = a.field();
    Scalar s = 0;
    for (int i = 0; i < a.dim(); ++i) s = f.add(s, f.mul(a[i], b[i]));
    return s;
}

Matrix::Matrix(const Field& f, int rows, int cols)
    : field_(f), rows_(rows), cols_(cols),
      a_(static_cast<size_t>(rows) * static_cast<size_t>(cols), 0) {
    require(rows >= 0 && cols >= 0, "matrix dimensions must be nonnegative");
}

Matrix::Matrix(const Field& f, std::vector<std::vector<int>> rows)
    : field_(f), rows_(static_cast<int>(rows.size())), cols_(0) {
    if (rows_ > 0) cols_ = static_cast<int>(rows[0].size());
    a_.reserve(static_cast<size_t>(rows_) * static_cast<size_t>(cols_));
    for (const auto& r : rows) {
        require(static_cast<int>(r.size()) == cols_, "ragged rows in matrix literal");
        for (int x : r) {
            require(x >= 0 && x < f.modulus(), "matrix entry out of range for GF(" +
                                                   std::to_string(f.modulus()) + ")");
            a_.push_back(static_cast<Scalar>(x));
        }
    }
}

Matrix Matrix::identity(const Field& f, int n) {
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(const Field& f, const std::vector<Vec>& rows, int cols) {
    Matrix m(f, static_cast<int>(rows.size()), cols);
    for (int r = 0; r < m.rows(); ++r) {
        require(rows[static_cast<size_t>(r)].dim() == cols, "row dimension mismatch");
        for (int c = 0; c < cols; ++c) m.at(r, c) = rows[static_cast<size_t>(r)][c];
    }
    return m;
}

Matrix Matrix::from_cols(const Field& f, const std::vector<Vec>& cols, int rows) {
    Matrix m(f, rows, static_cast<int>(cols.size()));
    for (int c = 0; c < m.cols(); ++c) {
        require(cols[static_cast<size_t>(c)].dim() == rows, "column dimension mismatch");
        for (int r = 0; r < rows; ++r) m.at(r, c) = cols[static_cast<size_t>(c)][r];
    }
    return m;
}

Vec Matrix::row(int r) const {
    require(r >= 0 && r < rows_, "row index out of range");
    std::vector<Scalar> e(static_cast<size_t>(cols_));
    for (int c = 0; c < cols_; ++c) e[static_cast<size_t>(c)] = at(r, c);
    return Vec(field_, std::move(e));
}

Vec Matrix::col(int c) const {
    require(c >= 0 && c < cols_, "column index out of range");
    std::vector<Scalar> e(static_cast<size_t>(rows_));
    for (int r = 0; r < rows_; ++r) e[static_cast<size_t>(r)] = at(r, c);
    return Vec(field_, std::move(e));
}

std::vector<Vec> Matrix::row_vectors() const {
    std::vector<Vec> out;
    out.reserve(static_cast<size_t>(rows_));
    for (int r = 0; r < rows_; ++r) out.push_back(row(r));
    return out;
}

std::vector<Vec> Matrix::col_vectors() const {
    std::vector<Vec> out;
    out.reserve(static_cast<size_t>(cols_));
    for (int c = 0; c < cols_; ++c) out.push_back(col(c));
    return out;
}

Matrix Matrix::select_cols(const std::vector<int>& indices) const {
    Matrix m(field_, rows_, static_cast<int>(indices.size()));
    for (int j = 0; j < m.cols(); ++j) {
        int c = indices[static_cast<size_t>(j)];
        require(c >= 0 && c < cols_, "column index out of range");
        for (int r = 0; r < rows_; ++r) m.at(r, j) = at(r, c);
    }
    return m;
}

Matrix Matrix::with_row_appended(const Vec& v) const {
    require(v.dim() == cols_, "appended row has wrong dimension");
    Matrix m(field_, rows_ + 1, cols_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) m.at(r, c) = at(r, c);
    for (int c = 0; c < cols_; ++c) m.at(rows_, c) = v[c];
    return m;
}

Matrix Matrix::without_row(int r) const {
    require(r >= 0 && r < rows_, "row index out of range");
    Matrix m(field_, rows_ - 1, cols_);
    int out = 0;
    for (int i = 0; i < rows_; ++i) {
        if (i == r) continue;
        for (int c = 0; c < cols_; ++c) m.at(out, c) = at(i, c);
        ++out;
    }
    return m;
}

bool Matrix::is_zero() const {
    for (Scalar x : a_) {
        if (x != 0) return false;
    }
    return true;
}

bool Matrix::operator==(const Matrix& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

RrefResult rref(const Matrix& a) {
    Matrix m = a;
    const Field& f = m.field();
    std::vector<int> pivots;
    int current = 0; // next row to place a pivot in
    for (int c = 0; c < m.cols() && current < m.rows(); ++c) {
        int pivot_row = -1;
        for (int r = current; r < m.rows(); ++r) {
            if (m.at(r, c) != 0) {
                pivot_row = r;
                break;
            }
        }
        if (pivot_row < 0) continue;
        if (pivot_row != current) {
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(pivot_row, j), m.at(current, j));
        }
        Scalar scale = f.inv(m.at(current, c));
        for (int j = 0; j < m.cols(); ++j) m.at(current, j) = f.mul(m.at(current, j), scale);
        for (int r = 0; r < m.rows(); ++r) {
            if (r == current || m.at(r, c) == 0) continue;
            Scalar factor = m.at(r, c);
            for (int j = 0; j < m.cols(); ++j)
                m.at(r, j) = f.sub(m.at(r, j), f.mul(factor, m.at(current, j)));
        }
        pivots.push_back(c);
        ++current;
    }
    return RrefResult{std::move(m), std::move(pivots), current};
}

int rank_of(const Matrix& a) {
    return rref(a).rank;
}

std::vector<Vec> nullspace_basis(const Matrix& a) {
    RrefResult r = rref(a);
    const Field& f = a.field();
    std::vector<bool> is_pivot(static_cast<size_t>(a.cols()), false);
    for (int c : r.pivot_cols) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<Vec> basis;
    for (int free = 0; free < a.cols(); ++free) {
        if (is_pivot[static_cast<size_t>(free)]) continue;
        Vec x = Vec::zero(f, a.cols());
        x[free] = 1;
        for (int i = 0; i < r.rank; ++i) {
            int pc = r.pivot_cols[static_cast<size_t>(i)];
            x[pc] = f.neg(r.reduced.at(i, free));
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

std::optional<std::vector<Scalar>> solve_in_span(const Vec& target,
                                                 const std::vector<Vec>& generators) {
    const Field& f = target.field();
    const int dim = target.dim();
    const int k = static_cast<int>(generators.size());
    for (const Vec& g : generators) {
        require(g.field() == f, "span generators over mismatched field");
        require(g.dim() == dim, "span generator dimension mismatch");
    }
    // Stack generators as columns, augment with the target, and reduce.
    Matrix m(f, dim, k + 1);
    for (int j = 0; j < k; ++j)
        for (int r = 0; r < dim; ++r) m.at(r, j) = generators[static_cast<size_t>(j)][r];
    for (int r = 0; r < dim; ++r) m.at(r, k) = target[r];
    RrefResult red = rref(m);
    std::vector<Scalar> coeffs(static_cast<size_t>(k), 0);
    for (int i = 0; i < red.rank; ++i) {
        int pc = red.pivot_cols[static_cast<size_t>(i)];
        if (pc == k) return std::nullopt; // target independent of the generators
        coeffs[static_cast<size_t>(pc)] = red.reduced.at(i, k);
    }
    return coeffs;
}

bool in_span(const Vec& target, const std::vector<Vec>& generators) {
    return solve_in_span(target, generators).has_value();
}

Matrix extend_to_basis(const Vec& v, int dim) {
    require(v.dim() == dim, "extend_to_basis: vector dimension mismatch");
    require(!v.is_zero(), "extend_to_basis requires a nonzero vector");
    const Field& f = v.field();
    std::vector<Vec> cols{v};
    for (int i = 0; i < dim && static_cast<int>(cols.size()) < dim; ++i) {
        Vec e = Vec::unit(f, dim, i);
        if (!in_span(e, cols)) cols.push_back(std::move(e));
    }
    return Matrix::from_cols(f, cols, dim);
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    require(a.field() == b.field(), "matrix product over mismatched fields");
    require(a.cols() == b.rows(), "matrix product dimension mismatch");
    const Field& f = a.field();
    Matrix m(f, a.rows(), b.cols());
    for (int r = 0; r < a.rows(); ++r) {
        for (int k = 0; k < a.cols(); ++k) {
            Scalar x = a.at(r, k);
            if (x == 0) continue;
            for (int c = 0; c < b.cols(); ++c)
                m.at(r, c) = f.add(m.at(r, c), f.mul(x, b.at(k, c)));
        }
    }
    return m;
}

Vec multiply(const Matrix& a, const Vec& x) {
    require(a.field() == x.field(), "matrix-vector product over mismatched fields");
    require(a.cols() == x.dim(), "matrix-vector product dimension mismatch");
    const Field& f = a.field();
    Vec out = Vec::zero(f, a.rows());
    for (int r = 0; r < a.rows(); ++r) {
        Scalar s = 0;
        for (int c = 0; c < a.cols(); ++c) s = f.add(s, f.mul(a.at(r, c), x[c]));
        out[r] = s;
    }
    return out;
}

Matrix transpose(const Matrix& a) {
    Matrix m(a.field(), a.cols(), a.rows());
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c) m.at(c, r) = a.at(r, c);
    return m;
}

Matrix inverse(const Matrix& a) {
    require(a.rows() == a.cols(), "only square matrices can be inverted");
    const Field& f = a.field();
    const int n = a.rows();
    // Gauss-Jordan on [a | I].
    Matrix m(f, n, 2 * n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) m.at(r, c) = a.at(r, c);
        m.at(r, n + r) = 1;
    }
    RrefResult red = rref(m);
    for (int i = 0; i < n; ++i) {
        if (i >= red.rank || red.pivot_cols[static_cast<size_t>(i)] != i) {
            throw InputError("matrix is singular");
        }
    }
    Matrix inv(f, n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) inv.at(r, c) = red.reduced.at(r, n + c);
    return inv;
}

std::vector<Vec> all_vectors(const Field& f, int dim) {
    require(dim >= 0, "vector dimension must be nonnegative");
    std::vector<Vec> out;
    Vec v = Vec::zero(f, dim);
    const int p = f.modulus();
    while (true) {
        out.push_back(v);
        // increment as a base-p counter, least significant coordinate last
        int i = dim - 1;
        for (; i >= 0; --i) {
            if (v[i] + 1 < p) {
                v[i] = static_cast<Scalar>(v[i] + 1);
                break;
            }
            v[i] = 0;
        }
        if (i < 0) break;
    }
    return out;
}

std::vector<Vec> projective_points(const Field& f, int dim) {
    std::vector<Vec> out;
    for (const Vec& v : all_vectors(f, dim)) {
        int lead = v.leading_index();
        if (lead >= 0 && v[lead] == 1) out.push_back(v);
    }
    return out;
}

} // namespace mdepth
