#pragma once

#include <vector>

#include "mdepth/matrix.hpp"
#include "mdepth/matroid.hpp"

#include "oracle.hpp"

namespace testutil {

inline mdepth::Matrix mat(int p, const std::vector<std::vector<int>>& rows) {
    mdepth::Field f(p);
    const int h = static_cast<int>(rows.size());
    const int n = h == 0 ? 0 : static_cast<int>(rows[0].size());
    mdepth::Matrix a(f, h, n);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < n; ++c) a.at(r, c) = static_cast<mdepth::Scalar>(rows[r][c]);
    }
    return a;
}

inline mdepth::Vec vec(int p, const std::vector<int>& entries) {
    std::vector<mdepth::Scalar> s;
    for (int e : entries) s.push_back(static_cast<mdepth::Scalar>(e));
    return mdepth::Vec(mdepth::Field(p), std::move(s));
}

inline std::vector<std::vector<int>> to_rows(const mdepth::Matrix& a) {
    std::vector<std::vector<int>> rows(a.rows(), std::vector<int>(a.cols()));
    for (int r = 0; r < a.rows(); ++r) {
        for (int c = 0; c < a.cols(); ++c) rows[r][c] = a.at(r, c);
    }
    return rows;
}

// All h x n matrices over GF(p), entries counting up with the last position
// fastest.
template <typename Fn>
void for_all_matrices(int p, int h, int n, Fn&& fn) {
    std::vector<std::vector<int>> rows(h, std::vector<int>(n, 0));
    while (true) {
        fn(rows);
        int r = h - 1, c = n - 1;
        while (r >= 0) {
            if (++rows[r][c] < p) break;
            rows[r][c] = 0;
            if (--c < 0) {
                c = n - 1;
                --r;
            }
        }
        if (r < 0) break;
    }
}

// Position subsets of the oracle matroid mapped through its labels, so the
// same subset can be asked of a RepMatroid carrying those labels.
inline mdepth::LabelSet labels_of(const oracle::Matroid& m, const std::vector<int>& positions) {
    mdepth::LabelSet s;
    for (int pos : positions) s.push_back(m.labels[pos]);
    return s;
}

// Every subset of {0..n-1} as a position list, all 2^n of them.
inline std::vector<std::vector<int>> position_subsets(int n) {
    std::vector<std::vector<int>> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> s;
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) s.push_back(i);
        }
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace testutil
