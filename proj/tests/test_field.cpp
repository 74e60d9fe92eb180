#include <doctest.h>

#include <algorithm>

#include "mdepth/errors.hpp"
#include "mdepth/matrix.hpp"

#include "helpers.hpp"

using namespace mdepth;
using testutil::for_all_matrices;
using testutil::mat;
using testutil::vec;

TEST_CASE("field constructor accepts exactly the supported primes") {
    for (int p : {2, 3, 5, 7, 11, 13, 127, 251}) CHECK(Field(p).modulus() == p);
    for (int p : {-7, 0, 1, 4, 6, 9, 15, 249, 252, 253, 257}) {
        CHECK_THROWS_AS(Field{p}, InputError);
    }
}

TEST_CASE("primality helper") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(251));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(121));
    CHECK_FALSE(is_prime(255));
}

TEST_CASE("arithmetic in GF(7)") {
    Field f(7);
    for (int a = 0; a < 7; ++a) {
        for (int b = 0; b < 7; ++b) {
            CHECK(f.add(Scalar(a), Scalar(b)) == (a + b) % 7);
            CHECK(f.sub(Scalar(a), Scalar(b)) == ((a - b) % 7 + 7) % 7);
            CHECK(f.mul(Scalar(a), Scalar(b)) == (a * b) % 7);
        }
        CHECK(f.add(Scalar(a), f.neg(Scalar(a))) == 0);
        if (a != 0) CHECK(f.mul(Scalar(a), f.inv(Scalar(a))) == 1);
    }
    CHECK_THROWS_AS(f.inv(0), InputError);
    CHECK(f.reduce(-1) == 6);
    CHECK(f.reduce(700) == 0);
    CHECK(f.reduce(-13) == 1);
}

TEST_CASE("inverses near the modulus ceiling stay in one byte") {
    Field f(251);
    for (int a = 1; a < 251; ++a) {
        CHECK(f.mul(Scalar(a), f.inv(Scalar(a))) == 1);
    }
}

TEST_CASE("vector basics") {
    Field f(3);
    Vec z = Vec::zero(f, 4);
    CHECK(z.is_zero());
    CHECK(z.leading_index() == -1);
    Vec u = Vec::unit(f, 4, 2);
    CHECK_FALSE(u.is_zero());
    CHECK(u.leading_index() == 2);
    CHECK(u[2] == 1);
    Vec v = vec(3, {0, 2, 1, 0});
    CHECK(v.leading_index() == 1);
    CHECK(dot(u, v) == 1);
    CHECK(dot(v, v) == (4 + 1) % 3);
    CHECK(v < vec(3, {1, 0, 0, 0}));
}

TEST_CASE("rref produces the canonical form") {
    // Already reduced: comes back unchanged.
    Matrix a = mat(2, {{1, 0, 1}, {0, 1, 1}});
    RrefResult r = rref(a);
    CHECK(r.reduced == a);
    CHECK(r.rank == 2);
    CHECK(r.pivot_cols == std::vector<int>{0, 1});

    // Row-swapped presentation of the same row space reduces to the same form.
    Matrix b = mat(2, {{0, 1, 1}, {1, 0, 1}});
    CHECK(rref(b).reduced == a);

    // Zero rows land at the bottom.
    Matrix c = mat(2, {{0, 0}, {1, 1}});
    RrefResult rc = rref(c);
    CHECK(rc.rank == 1);
    CHECK(rc.reduced == mat(2, {{1, 1}, {0, 0}}));

    // GF(3): the second row is twice the first, so only one pivot survives,
    // scaled to 1.
    Matrix d = mat(3, {{2, 1}, {1, 2}});
    RrefResult rd = rref(d);
    CHECK(rd.rank == 1);
    CHECK(rd.reduced == mat(3, {{1, 2}, {0, 0}}));

    // An invertible GF(3) matrix reduces to the identity.
    CHECK(rref(mat(3, {{2, 1}, {1, 1}})).reduced == Matrix::identity(Field(3), 2));
}

TEST_CASE("rank agrees with the brute-force definition on small families") {
    for_all_matrices(2, 2, 3, [](const std::vector<std::vector<int>>& rows) {
        oracle::Matroid om = oracle::make(2, rows);
        CHECK(rank_of(mat(2, rows)) == oracle::rank(om));
    });
    for_all_matrices(3, 2, 2, [](const std::vector<std::vector<int>>& rows) {
        oracle::Matroid om = oracle::make(3, rows);
        CHECK(rank_of(mat(3, rows)) == oracle::rank(om));
    });
}

TEST_CASE("nullspace basis") {
    Matrix a = mat(2, {{1, 0, 1}, {0, 1, 1}});
    std::vector<Vec> ns = nullspace_basis(a);
    REQUIRE(ns.size() == 1);
    CHECK(ns[0] == vec(2, {1, 1, 1}));

    // Every basis vector is annihilated; count matches cols - rank.
    for_all_matrices(3, 2, 3, [](const std::vector<std::vector<int>>& rows) {
        Matrix m = mat(3, rows);
        std::vector<Vec> basis = nullspace_basis(m);
        CHECK(static_cast<int>(basis.size()) == m.cols() - rank_of(m));
        for (const Vec& x : basis) CHECK(multiply(m, x).is_zero());
        // Nullspace vectors are independent (their own matrix has full rank).
        if (!basis.empty()) {
            CHECK(rank_of(Matrix::from_cols(m.field(), basis, m.cols())) ==
                  static_cast<int>(basis.size()));
        }
    });
}

TEST_CASE("span membership") {
    Field f(2);
    std::vector<Vec> gens = {vec(2, {1, 0, 1}), vec(2, {0, 1, 1})};
    CHECK(in_span(vec(2, {1, 1, 0}), gens));
    CHECK_FALSE(in_span(vec(2, {1, 1, 1}), gens));

    auto sol = solve_in_span(vec(2, {1, 1, 0}), gens);
    REQUIRE(sol.has_value());
    REQUIRE(sol->size() == 2);
    // Recombine and compare.
    Vec acc = Vec::zero(f, 3);
    for (size_t i = 0; i < gens.size(); ++i) {
        for (int k = 0; k < 3; ++k) acc[k] = f.add(acc[k], f.mul((*sol)[i], gens[i][k]));
    }
    CHECK(acc == vec(2, {1, 1, 0}));
    CHECK_FALSE(solve_in_span(vec(2, {1, 1, 1}), gens).has_value());
    CHECK(in_span(Vec::zero(f, 3), {}));
}

TEST_CASE("extend_to_basis puts v first and is invertible") {
    for (int p : {2, 3}) {
        Field f(p);
        for (const Vec& v : all_vectors(f, 3)) {
            if (v.is_zero()) continue;
            Matrix t = extend_to_basis(v, 3);
            CHECK(t.col(0) == v);
            CHECK(rank_of(t) == 3);
            Matrix prod = multiply(inverse(t), t);
            CHECK(prod == Matrix::identity(f, 3));
        }
    }
    CHECK_THROWS_AS(extend_to_basis(Vec::zero(Field(2), 2), 2), InputError);
}

TEST_CASE("multiply, transpose, inverse") {
    Matrix a = mat(5, {{1, 2}, {3, 4}});
    Matrix b = mat(5, {{0, 1}, {1, 0}});
    CHECK(multiply(a, b) == mat(5, {{2, 1}, {4, 3}}));
    CHECK(transpose(a) == mat(5, {{1, 3}, {2, 4}}));
    CHECK(multiply(a, inverse(a)) == Matrix::identity(Field(5), 2));
    CHECK_THROWS_AS(inverse(mat(5, {{1, 2}, {2, 4}})), InputError);
}

TEST_CASE("vector enumeration orders") {
    Field f2(2);
    std::vector<Vec> all = all_vectors(f2, 2);
    REQUIRE(all.size() == 4);
    CHECK(all[0] == vec(2, {0, 0}));
    CHECK(all[1] == vec(2, {0, 1}));
    CHECK(all[2] == vec(2, {1, 0}));
    CHECK(all[3] == vec(2, {1, 1}));
    CHECK(std::is_sorted(all.begin(), all.end()));

    Field f3(3);
    std::vector<Vec> pts = projective_points(f3, 2);
    REQUIRE(pts.size() == 4); // (3^2 - 1) / (3 - 1)
    CHECK(pts[0] == vec(3, {0, 1}));
    CHECK(pts[1] == vec(3, {1, 0}));
    CHECK(pts[2] == vec(3, {1, 1}));
    CHECK(pts[3] == vec(3, {1, 2}));

    CHECK(projective_points(f2, 3).size() == 7);
    CHECK(all_vectors(f3, 0).size() == 1); // just the empty vector
}

TEST_CASE("row and column surgery") {
    Matrix a = mat(2, {{1, 0, 1}, {0, 1, 1}});
    Matrix grown = a.with_row_appended(vec(2, {1, 1, 1}));
    CHECK(grown.rows() == 3);
    CHECK(grown.row(2) == vec(2, {1, 1, 1}));
    CHECK(grown.without_row(2) == a);
    CHECK(a.without_row(0) == mat(2, {{0, 1, 1}}));
    Matrix sel = a.select_cols({2, 0});
    CHECK(sel.col(0) == vec(2, {1, 1}));
    CHECK(sel.col(1) == vec(2, {1, 0}));
    CHECK(Matrix::from_rows(Field(2), a.row_vectors(), 3) == a);
    CHECK(Matrix::from_cols(Field(2), a.col_vectors(), 2) == a);
}
