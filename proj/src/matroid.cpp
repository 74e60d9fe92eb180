#include "mdepth/matroid.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace mdepth {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw InputError(what);
}

/// RREF with zero rows removed: the canonical full-row-rank representation of
/// a row space.
Matrix normalize_matrix(const Matrix& a) {
    RrefResult r = rref(a);
    Matrix m(a.field(), r.rank, a.cols());
    for (int i = 0; i < r.rank; ++i)
        for (int c = 0; c < a.cols(); ++c) m.at(i, c) = r.reduced.at(i, c);
    return m;
}

Vec drop_first_coordinate(const Vec& v) {
    std::vector<Scalar> e(v.entries().begin() + 1, v.entries().end());
    return Vec(v.field(), std::move(e));
}

/// Visits the size-k position subsets of 0..n-1 in lexicographic order.
template <typename F>
void for_each_combination(int n, int k, F&& visit) {
    std::vector<int> idx(static_cast<size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    if (k > n) return;
    while (true) {
        visit(idx);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++idx[static_cast<size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
    }
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

} // namespace

std::string label_name(Label e) {
    return "c" + std::to_string(e + 1);
}

std::string label_set_name(const LabelSet& s) {
    std::string out = "{";
    for (size_t i = 0; i < s.size(); ++i) {
        if (i > 0) out += ",";
        out += label_name(s[i]);
    }
    out += "}";
    return out;
}

RepMatroid::RepMatroid(Matrix m, std::vector<Label> labels)
    : matrix_(std::move(m)), labels_(std::move(labels)) {}

RepMatroid RepMatroid::from_matrix(const Matrix& a) {
    std::vector<Label> labels(static_cast<size_t>(a.cols()));
    std::iota(labels.begin(), labels.end(), 0);
    return from_matrix(a, std::move(labels));
}

RepMatroid RepMatroid::from_matrix(const Matrix& a, std::vector<Label> labels) {
    require(static_cast<int>(labels.size()) == a.cols(),
            "label count must match the number of columns");
    for (size_t i = 1; i < labels.size(); ++i) {
        require(labels[i - 1] < labels[i], "labels must be strictly increasing");
    }
    return RepMatroid(normalize_matrix(a), std::move(labels));
}

RepMatroid RepMatroid::from_matrix_with_contracted(const Matrix& a,
                                                   const std::vector<Vec>& contracted) {
    Matrix m = a;
    std::vector<Vec> pending = contracted;
    // Fold the contracted vectors in one at a time.  Each fold applies the
    // basis change that sends the vector to the first coordinate axis and then
    // forgets that coordinate; the remaining pending vectors are carried into
    // the new coordinates the same way.
    while (!pending.empty()) {
        Vec v = pending.front();
        pending.erase(pending.begin());
        require(v.field() == m.field(), "contracted vector over mismatched field");
        require(v.dim() == m.rows(), "contracted vector dimension mismatch");
        if (v.is_zero()) continue; // dependent on the earlier ones: no effect
        Matrix t_inv = inverse(extend_to_basis(v, m.rows()));
        m = multiply(t_inv, m).without_row(0);
        for (Vec& u : pending) u = drop_first_coordinate(multiply(t_inv, u));
    }
    return from_matrix(m);
}

LabelSet RepMatroid::ground_set() const {
    return labels_;
}

bool RepMatroid::has_label(Label e) const {
    return std::binary_search(labels_.begin(), labels_.end(), e);
}

std::vector<int> RepMatroid::positions_of(const LabelSet& s) const {
    std::vector<int> pos;
    pos.reserve(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
        require(i == 0 || s[i - 1] < s[i], "label set must be strictly increasing");
        auto it = std::lower_bound(labels_.begin(), labels_.end(), s[i]);
        require(it != labels_.end() && *it == s[i],
                "unknown ground-set element " + label_name(s[i]));
        pos.push_back(static_cast<int>(it - labels_.begin()));
    }
    return pos;
}

Vec RepMatroid::column_of(Label e) const {
    std::vector<int> pos = positions_of({e});
    return matrix_.col(pos[0]);
}

bool RepMatroid::is_independent(const LabelSet& s) const {
    return rank_of(s) == static_cast<int>(s.size());
}

int RepMatroid::rank_of(const LabelSet& s) const {
    return mdepth::rank_of(matrix_.select_cols(positions_of(s)));
}

bool RepMatroid::is_loop(Label e) const {
    return column_of(e).is_zero();
}

std::vector<LabelSet> RepMatroid::circuits(int max_elements) const {
    if (size() > max_elements) {
        throw GuardError("circuit enumeration refused: " + std::to_string(size()) +
                         " elements exceed the guard of " + std::to_string(max_elements));
    }
    std::vector<LabelSet> out;
    for (int k = 1; k <= size(); ++k) {
        for_each_combination(size(), k, [&](const std::vector<int>& idx) {
            LabelSet s;
            s.reserve(idx.size());
            for (int i : idx) s.push_back(labels_[static_cast<size_t>(i)]);
            if (is_independent(s)) return;
            for (size_t drop = 0; drop < s.size(); ++drop) {
                LabelSet sub;
                sub.reserve(s.size() - 1);
                for (size_t j = 0; j < s.size(); ++j) {
                    if (j != drop) sub.push_back(s[j]);
                }
                if (!is_independent(sub)) return; // a smaller dependent set exists
            }
            out.push_back(std::move(s));
        });
    }
    return out;
}

std::vector<LabelSet> RepMatroid::components(int max_elements) const {
    UnionFind uf(size());
    for (const LabelSet& circuit : circuits(max_elements)) {
        std::vector<int> pos = positions_of(circuit);
        for (size_t i = 1; i < pos.size(); ++i) uf.unite(pos[0], pos[static_cast<size_t>(i)]);
    }
    std::map<int, LabelSet> classes; // keyed by root position; map order = smallest label
    for (int i = 0; i < size(); ++i) {
        classes[uf.find(i)].push_back(labels_[static_cast<size_t>(i)]);
    }
    std::vector<LabelSet> out;
    out.reserve(classes.size());
    for (auto& [root, members] : classes) {
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    std::sort(out.begin(), out.end(),
              [](const LabelSet& a, const LabelSet& b) { return a.front() < b.front(); });
    return out;
}

bool RepMatroid::is_connected(int max_elements) const {
    if (empty()) return false;
    return components(max_elements).size() == 1;
}

RepMatroid RepMatroid::restrict_to(const LabelSet& s) const {
    std::vector<int> pos = positions_of(s);
    return RepMatroid(normalize_matrix(matrix_.select_cols(pos)), s);
}

RepMatroid RepMatroid::delete_elements(const LabelSet& s) const {
    positions_of(s); // validates
    LabelSet keep;
    keep.reserve(labels_.size());
    for (Label e : labels_) {
        if (!std::binary_search(s.begin(), s.end(), e)) keep.push_back(e);
    }
    return restrict_to(keep);
}

RepMatroid RepMatroid::delete_element(Label e) const {
    return delete_elements({e});
}

RepMatroid RepMatroid::contract_vector(const Vec& v) const {
    require(v.field() == field(), "contraction vector over mismatched field");
    require(v.dim() == rank(), "contraction vector must live in the quotient coordinate space");
    require(!v.is_zero(), "contraction vector must be nonzero");
    Matrix t_inv = inverse(extend_to_basis(v, rank()));
    Matrix reduced = multiply(t_inv, matrix_).without_row(0);
    return RepMatroid(normalize_matrix(reduced), labels_);
}

RepMatroid RepMatroid::contract_element(Label e) const {
    Vec col = column_of(e);
    if (col.is_zero()) return delete_element(e); // contracting a loop deletes it
    return contract_vector(col).delete_element(e);
}

namespace {

/// Branch-and-bound search for the lexicographically minimal column-major
/// serialization of the RREF over all column permutations.
///
/// Processing columns left to right, the j-th RREF column is determined by the
/// first j chosen columns alone: a fresh pivot turns into the next standard
/// basis vector, anything else into its coordinates over the pivots chosen so
/// far.  The minimal serialization is therefore found by placing, at each
/// position, only columns whose reduced form attains the minimum, branching on
/// ties between distinct fresh pivots.
struct CanonicalSearch {
    const Field& f;
    int h;
    std::vector<Vec> cols;          // original columns
    std::vector<Scalar> best;       // best complete serialization found
    bool have_best = false;
    long budget;
    bool exhausted = false;

    std::vector<Vec> pivots;
    std::vector<int> remaining;
    std::vector<Scalar> current;

    CanonicalSearch(const Field& field, const Matrix& m, long node_budget)
        : f(field), h(m.rows()), budget(node_budget) {
        cols = m.col_vectors();
        remaining.resize(cols.size());
        std::iota(remaining.begin(), remaining.end(), 0);
    }

    Vec reduced_form(const Vec& column) const {
        auto coeffs = solve_in_span(column, pivots);
        Vec out = Vec::zero(f, h);
        if (coeffs) {
            for (size_t i = 0; i < coeffs->size(); ++i) out[static_cast<int>(i)] = (*coeffs)[i];
        } else {
            out[static_cast<int>(pivots.size())] = 1; // fresh pivot
        }
        return out;
    }

    // `tight` means current equals the best serialization so far; only then
    // can a worse continuation be pruned.
    void dfs(bool tight) {
        if (--budget < 0) {
            exhausted = true;
            return;
        }
        if (remaining.empty()) {
            if (!have_best || !tight) {
                best = current;
                have_best = true;
            }
            return;
        }
        // Reduced form of every remaining column; keep the minimum only.
        std::vector<std::pair<Vec, int>> options; // (reduced form, column index)
        for (int c : remaining) {
            Vec r = reduced_form(cols[static_cast<size_t>(c)]);
            if (options.empty() || r < options.front().first) {
                options.assign(1, {r, c});
            } else if (r == options.front().first) {
                // Equal reduced non-pivot forms mean equal original columns;
                // a single branch covers them.  Distinct fresh pivots must
                // each be tried.
                bool duplicate = false;
                for (const auto& [rr, cc] : options) {
                    if (cols[static_cast<size_t>(cc)] == cols[static_cast<size_t>(c)]) {
                        duplicate = true;
                        break;
                    }
                }
                if (!duplicate) options.push_back({r, c});
            }
        }
        const Vec& value = options.front().first;
        bool is_fresh_pivot = !in_span(cols[static_cast<size_t>(options.front().second)], pivots);
        bool child_tight = tight;
        if (have_best && tight) {
            // Compare the would-be appended segment against best.
            size_t base = current.size();
            for (int i = 0; i < h; ++i) {
                Scalar b = best[base + static_cast<size_t>(i)];
                if (value[i] > b) return; // strictly worse than best: prune
                if (value[i] < b) {
                    child_tight = false;
                    break;
                }
            }
        }
        for (const auto& [r, c] : options) {
            size_t mark = current.size();
            for (int i = 0; i < h; ++i) current.push_back(r[i]);
            if (is_fresh_pivot) pivots.push_back(cols[static_cast<size_t>(c)]);
            remaining.erase(std::find(remaining.begin(), remaining.end(), c));

            dfs(child_tight && have_best);

            remaining.push_back(c);
            std::sort(remaining.begin(), remaining.end());
            if (is_fresh_pivot) pivots.pop_back();
            current.resize(mark);
            if (exhausted) return;
            // After the first completed branch a best exists; siblings are
            // equal up to this level, so they continue tight.
            child_tight = true;
        }
    }
};

std::string serialize_key(char tag, int p, int h, int n, const std::vector<Scalar>& entries) {
    std::string key;
    key.reserve(4 + entries.size());
    key.push_back(tag);
    key.push_back(static_cast<char>(p));
    key.push_back(static_cast<char>(h));
    key.push_back(static_cast<char>(n));
    for (Scalar x : entries) key.push_back(static_cast<char>(x));
    return key;
}

std::string weak_key(const Matrix& m) {
    std::vector<Vec> cols = m.col_vectors();
    std::sort(cols.begin(), cols.end());
    std::vector<Scalar> entries;
    entries.reserve(static_cast<size_t>(m.rows()) * static_cast<size_t>(m.cols()));
    for (const Vec& c : cols)
        for (int i = 0; i < c.dim(); ++i) entries.push_back(c[i]);
    return serialize_key('S', m.field().modulus(), m.rows(), m.cols(), entries);
}

} // namespace

std::string RepMatroid::canonical_key(int max_cols, long node_budget) const {
    if (size() > max_cols) return weak_key(matrix_);
    CanonicalSearch search(field(), matrix_, node_budget);
    search.dfs(false);
    if (search.exhausted) return weak_key(matrix_);
    return serialize_key('C', field().modulus(), rank(), size(), search.best);
}

bool same_independence(const RepMatroid& a, const RepMatroid& b) {
    if (a.labels() != b.labels()) return false;
    const int n = a.size();
    const LabelSet& ground = a.labels();
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        LabelSet s;
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) s.push_back(ground[static_cast<size_t>(i)]);
        }
        if (a.is_independent(s) != b.is_independent(s)) return false;
    }
    return true;
}

} // namespace mdepth
