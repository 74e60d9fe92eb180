#include <doctest.h>

#include <string>
#include <vector>

#include "mdepth/depth.hpp"
#include "mdepth/errors.hpp"
#include "mdepth/io.hpp"

#include "helpers.hpp"

using namespace mdepth;
using testutil::for_all_matrices;
using testutil::mat;
using testutil::vec;

namespace {

struct Worked {
    const char* name;
    int p;
    std::vector<std::vector<int>> rows;
    int cd, dd, csd, dsd;
};

// Values fixed by hand from the defining recursions and confirmed by the
// brute-force oracle before being frozen here.
const std::vector<Worked> kWorked = {
    {"three-point line", 2, {{1, 0, 1}, {0, 1, 1}}, 3, 2, 2, 1},
    {"three parallel", 2, {{1, 1, 1}}, 2, 3, 1, 2},
    {"loop", 2, {{0}}, 1, 1, 0, 1},
    {"coloop", 2, {{1}}, 1, 1, 1, 0},
    {"two coloops", 2, {{1, 0}, {0, 1}}, 1, 1, 1, 0},
    {"parallel pair", 2, {{1, 1}}, 2, 2, 1, 1},
};

int oracle_value(const oracle::Matroid& om, DepthParam p) {
    switch (p) {
        case DepthParam::Contraction: return oracle::cd(om);
        case DepthParam::Deletion: return oracle::dd(om);
        case DepthParam::ContractionStar: return oracle::csd(om);
        case DepthParam::DeletionStar: return oracle::dsd(om);
    }
    return -1;
}

const DepthParam kParams[] = {DepthParam::Contraction, DepthParam::Deletion,
                              DepthParam::ContractionStar, DepthParam::DeletionStar};

} // namespace

TEST_CASE("parameter names round-trip") {
    CHECK(std::string(to_string(DepthParam::Contraction)) == "cd");
    CHECK(std::string(to_string(DepthParam::Deletion)) == "dd");
    CHECK(std::string(to_string(DepthParam::ContractionStar)) == "csd");
    CHECK(std::string(to_string(DepthParam::DeletionStar)) == "dsd");
    for (DepthParam p : kParams) CHECK(depth_param_from_string(to_string(p)) == p);
    CHECK_FALSE(depth_param_from_string("td").has_value());
}

TEST_CASE("worked depth values") {
    for (const Worked& w : kWorked) {
        CAPTURE(w.name);
        RepMatroid m = RepMatroid::from_matrix(mat(w.p, w.rows));
        oracle::Matroid om = oracle::make(w.p, w.rows);
        CHECK(depth_value(m, DepthParam::Contraction) == w.cd);
        CHECK(depth_value(m, DepthParam::Deletion) == w.dd);
        CHECK(depth_value(m, DepthParam::ContractionStar) == w.csd);
        CHECK(depth_value(m, DepthParam::DeletionStar) == w.dsd);
        CHECK(oracle::cd(om) == w.cd);
        CHECK(oracle::dd(om) == w.dd);
        CHECK(oracle::csd(om) == w.csd);
        CHECK(oracle::dsd(om) == w.dsd);
    }

    RepMatroid empty = RepMatroid::from_matrix(Matrix(Field(2), 0, 0));
    for (DepthParam p : kParams) CHECK(depth_value(empty, p) == 0);

    // Four points in rank three: one vector contraction makes everything
    // parallel, so two contractions suffice and one cannot.
    RepMatroid u34 =
        RepMatroid::from_matrix(mat(2, {{1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}}));
    CHECK(depth_value(u34, DepthParam::ContractionStar) == 2);
    CHECK(oracle::csd(oracle::make(2, {{1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}})) == 2);
}

TEST_CASE("all four parameters match the definition across small families") {
    MemoCache cache;
    auto run_family = [&cache](int p, int h_max, int n_max) {
        for (int h = 1; h <= h_max; ++h) {
            for (int n = 1; n <= n_max; ++n) {
                for_all_matrices(p, h, n, [&](const std::vector<std::vector<int>>& rows) {
                    RepMatroid m = RepMatroid::from_matrix(mat(p, rows));
                    oracle::Matroid om = oracle::make(p, rows);
                    for (DepthParam par : kParams) {
                        CAPTURE(p);
                        CAPTURE(h);
                        CAPTURE(n);
                        CHECK(depth_value(m, par, cache) == oracle_value(om, par));
                    }
                });
            }
        }
    };
    run_family(2, 2, 3);
    run_family(3, 2, 2);
    CHECK(cache.size() > 0);
}

TEST_CASE("quotients also agree with the definition") {
    // Depths of vector-contraction quotients, which exercise the contracted
    // machinery end to end.
    MemoCache cache;
    for_all_matrices(2, 2, 3, [&](const std::vector<std::vector<int>>& rows) {
        RepMatroid m = RepMatroid::from_matrix(mat(2, rows));
        if (m.rank() == 0) return;
        oracle::Matroid om = oracle::make(2, testutil::to_rows(m.quotient()));
        for (const Vec& v : projective_points(Field(2), m.rank())) {
            std::vector<int> vi(v.entries().begin(), v.entries().end());
            RepMatroid mc = m.contract_vector(v);
            oracle::Matroid oc = oracle::contract_vector(om, vi);
            for (DepthParam par : kParams) {
                CHECK(depth_value(mc, par, cache) == oracle_value(oc, par));
            }
        }
    });
}

TEST_CASE("certificates verify and reproduce the value") {
    MemoCache cache;
    for_all_matrices(2, 2, 3, [&](const std::vector<std::vector<int>>& rows) {
        RepMatroid m = RepMatroid::from_matrix(mat(2, rows));
        for (DepthParam par : kParams) {
            DepthResult r = depth_with_certificate(m, par, cache);
            CHECK(r.value == depth_value(m, par, cache));
            CHECK(r.certificate.claimed_value == r.value);
            VerifyResult v = verify_certificate(m, par, r.certificate);
            CAPTURE(v.reason);
            CHECK(v.ok);
        }
    });
}

TEST_CASE("certificate choice is deterministic") {
    RepMatroid u23 = RepMatroid::from_matrix(mat(2, {{1, 0, 1}, {0, 1, 1}}));
    for (DepthParam par : kParams) {
        DepthResult a = depth_with_certificate(u23, par);
        DepthResult b = depth_with_certificate(u23, par);
        CHECK(certificate_to_json_text(par, a.certificate) ==
              certificate_to_json_text(par, b.certificate));
    }
}

TEST_CASE("verification accepts exactly the certificates proving the bound") {
    RepMatroid u13 = RepMatroid::from_matrix(mat(2, {{1, 1, 1}}));

    SUBCASE("a longer-than-optimal chain is still a valid upper bound") {
        // Appending a row already inside the row space changes nothing, so the
        // chain below proves dsd <= 3 while the true value is 2.  The verifier
        // checks the bound, not optimality.
        Certificate pair_step = Certificate::step_vector(
            Certificate::Action::AddRow, vec(2, {1, 0}),
            Certificate::base(Certificate::BaseKind::FullyIndependent, 0));
        Certificate split = Certificate::split(
            {{0}, {1, 2}},
            {Certificate::base(Certificate::BaseKind::FullyIndependent, 0), pair_step});
        Certificate inner = Certificate::step_vector(Certificate::Action::AddRow,
                                                     vec(2, {1, 0, 0}), split);
        Certificate outer = Certificate::step_vector(Certificate::Action::AddRow,
                                                     vec(2, {1, 1, 1}), inner);
        CHECK(inner.claimed_value == 2);
        CHECK(outer.claimed_value == 3);
        CHECK(verify_certificate(u13, DepthParam::DeletionStar, inner).ok);
        CHECK(verify_certificate(u13, DepthParam::DeletionStar, outer).ok);
    }

    SUBCASE("tampered arithmetic is rejected") {
        DepthResult r = depth_with_certificate(u13, DepthParam::DeletionStar);
        Certificate bad = r.certificate;
        bad.claimed_value += 1; // no longer 1 + child
        CHECK_FALSE(verify_certificate(u13, DepthParam::DeletionStar, bad).ok);
    }

    SUBCASE("base cases police their shape") {
        RepMatroid loop = RepMatroid::from_matrix(mat(2, {{0}}));
        RepMatroid coloop = RepMatroid::from_matrix(mat(2, {{1}}));
        Certificate rz = Certificate::base(Certificate::BaseKind::RankZero, 0);
        CHECK(verify_certificate(loop, DepthParam::ContractionStar, rz).ok);
        CHECK_FALSE(verify_certificate(coloop, DepthParam::ContractionStar, rz).ok);
        CHECK_FALSE(verify_certificate(loop, DepthParam::DeletionStar, rz).ok);
        Certificate rz1 = Certificate::base(Certificate::BaseKind::RankZero, 1);
        CHECK_FALSE(verify_certificate(loop, DepthParam::ContractionStar, rz1).ok);

        Certificate se = Certificate::base(Certificate::BaseKind::SingleElement, 1);
        CHECK(verify_certificate(coloop, DepthParam::Contraction, se).ok);
        CHECK_FALSE(verify_certificate(coloop, DepthParam::ContractionStar, se).ok);
        RepMatroid pair = RepMatroid::from_matrix(mat(2, {{1, 1}}));
        CHECK_FALSE(verify_certificate(pair, DepthParam::Contraction, se).ok);

        Certificate fi = Certificate::base(Certificate::BaseKind::FullyIndependent, 0);
        CHECK(verify_certificate(coloop, DepthParam::DeletionStar, fi).ok);
        CHECK_FALSE(verify_certificate(pair, DepthParam::DeletionStar, fi).ok);
    }

    SUBCASE("steps on the wrong matroid shape are rejected") {
        RepMatroid i2 = RepMatroid::from_matrix(Matrix::identity(Field(2), 2));
        Certificate chain = Certificate::step_element(
            Certificate::Action::ContractElement, 0,
            Certificate::base(Certificate::BaseKind::SingleElement, 1));
        // i2 is disconnected; a step may only be applied to a connected matroid.
        CHECK_FALSE(verify_certificate(i2, DepthParam::Contraction, chain).ok);
        // A coloop is already a base case for cd.
        RepMatroid coloop = RepMatroid::from_matrix(mat(2, {{1}}));
        Certificate over = Certificate::step_element(
            Certificate::Action::ContractElement, 0,
            Certificate::base(Certificate::BaseKind::RankZero, 0));
        CHECK_FALSE(verify_certificate(coloop, DepthParam::Contraction, over).ok);
    }

    SUBCASE("actions must match the parameter") {
        RepMatroid pair = RepMatroid::from_matrix(mat(2, {{1, 1}}));
        Certificate del = Certificate::step_element(
            Certificate::Action::DeleteElement, 0,
            Certificate::base(Certificate::BaseKind::SingleElement, 1));
        CHECK(verify_certificate(pair, DepthParam::Deletion, del).ok);
        CHECK_FALSE(verify_certificate(pair, DepthParam::Contraction, del).ok);
    }

    SUBCASE("unknown elements and bad vectors are rejected") {
        RepMatroid pair = RepMatroid::from_matrix(mat(2, {{1, 1}}));
        Certificate ghost = Certificate::step_element(
            Certificate::Action::ContractElement, 99,
            Certificate::base(Certificate::BaseKind::SingleElement, 1));
        CHECK_FALSE(verify_certificate(pair, DepthParam::Contraction, ghost).ok);

        Certificate zero_vec = Certificate::step_vector(
            Certificate::Action::ContractVector, Vec::zero(Field(2), 1),
            Certificate::base(Certificate::BaseKind::RankZero, 0));
        CHECK_FALSE(verify_certificate(pair, DepthParam::ContractionStar, zero_vec).ok);

        Certificate wrong_dim = Certificate::step_vector(
            Certificate::Action::ContractVector, vec(2, {1, 0}),
            Certificate::base(Certificate::BaseKind::RankZero, 0));
        CHECK_FALSE(verify_certificate(pair, DepthParam::ContractionStar, wrong_dim).ok);
    }

    SUBCASE("split parts must be the components") {
        RepMatroid i2 = RepMatroid::from_matrix(Matrix::identity(Field(2), 2));
        Certificate se0 = Certificate::base(Certificate::BaseKind::SingleElement, 1);
        Certificate good = Certificate::split({{0}, {1}}, {se0, se0});
        CHECK(verify_certificate(i2, DepthParam::Contraction, good).ok);
        Certificate merged = Certificate::split({{0, 1}}, {se0});
        CHECK_FALSE(verify_certificate(i2, DepthParam::Contraction, merged).ok);
    }
}

TEST_CASE("subspace recursions agree with the matroid recursions") {
    MemoCache cache;
    for_all_matrices(2, 2, 3, [&](const std::vector<std::vector<int>>& rows) {
        RepMatroid m = RepMatroid::from_matrix(mat(2, rows));
        SubspaceMatroid s = SubspaceMatroid::from_matroid(m);
        CHECK(subspace_contraction_depth(s) ==
              depth_value(m, DepthParam::ContractionStar, cache));
        CHECK(subspace_deletion_depth(s) == depth_value(m, DepthParam::DeletionStar, cache));
    });
    for_all_matrices(3, 2, 2, [&](const std::vector<std::vector<int>>& rows) {
        RepMatroid m = RepMatroid::from_matrix(mat(3, rows));
        SubspaceMatroid s = SubspaceMatroid::from_matroid(m);
        CHECK(subspace_contraction_depth(s) ==
              depth_value(m, DepthParam::ContractionStar, cache));
        CHECK(subspace_deletion_depth(s) == depth_value(m, DepthParam::DeletionStar, cache));
    });
}

TEST_CASE("row-interaction graph") {
    Graph g = dual_graph(mat(2, {{1, 0, 1}, {0, 1, 1}}));
    CHECK(g.size() == 2);
    CHECK(g.has_edge(0, 1)); // column 2 touches both rows
    CHECK_FALSE(dual_graph(Matrix::identity(Field(2), 2)).has_edge(0, 1));
    CHECK_FALSE(dual_graph(Matrix(Field(2), 2, 2)).has_edge(0, 1));
}

TEST_CASE("tree-depth matches the recursion on every small graph") {
    // All graphs on 4 and on 5 vertices.
    for (int n : {4, 5}) {
        std::vector<std::pair<int, int>> all_edges;
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) all_edges.push_back({u, v});
        }
        for (unsigned mask = 0; mask < (1u << all_edges.size()); ++mask) {
            Graph g(n);
            std::vector<std::pair<int, int>> chosen;
            for (size_t i = 0; i < all_edges.size(); ++i) {
                if (mask & (1u << i)) {
                    g.add_edge(all_edges[i].first, all_edges[i].second);
                    chosen.push_back(all_edges[i]);
                }
            }
            TreeDepthResult r = tree_depth(g);
            CHECK(r.value == oracle::tree_depth(n, chosen));
            CHECK(r.value == r.forest.depth() + 1);
            CHECK(forest_covers(g, r.forest));
        }
    }
}

TEST_CASE("tree-depth worked values") {
    auto td_of = [](int n, std::vector<std::pair<int, int>> edges) {
        Graph g(n);
        for (auto [u, v] : edges) g.add_edge(u, v);
        return tree_depth(g).value;
    };
    CHECK(td_of(1, {}) == 1);
    CHECK(td_of(2, {{0, 1}}) == 2);
    CHECK(td_of(3, {{0, 1}, {1, 2}}) == 2);      // path: root the middle
    CHECK(td_of(3, {{0, 1}, {1, 2}, {0, 2}}) == 3); // triangle
    CHECK(td_of(4, {{0, 1}, {1, 2}, {2, 3}}) == 3); // longer path
    CHECK(td_of(4, {}) == 1);                     // isolated vertices
    CHECK(tree_depth(Graph(0)).value == 0);
}

TEST_CASE("dual tree-depth of a matrix") {
    CHECK(dual_tree_depth(mat(2, {{1, 0, 1}, {0, 1, 1}})) == 2);
    CHECK(dual_tree_depth(Matrix::identity(Field(2), 2)) == 1);
    CHECK(dual_tree_depth(mat(2, {{1, 1, 1, 1}})) == 1);
    for_all_matrices(2, 3, 3, [](const std::vector<std::vector<int>>& rows) {
        Matrix a = mat(2, rows);
        TreeDepthResult r = dual_tree_depth_witness(a);
        CHECK(r.value == oracle::dual_tree_depth(2, rows));
        CHECK(r.value == dual_tree_depth(a));
        CHECK(forest_covers(dual_graph(a), r.forest));
    });
}

TEST_CASE("row-equivalence minimum of the dual tree-depth") {
    CHECK(min_dual_tree_depth_row_equiv(mat(2, {{1, 0, 1}, {0, 1, 1}})) == 2);
    CHECK(min_dual_tree_depth_row_equiv(Matrix::identity(Field(2), 2)) == 1);
    // Upper triangular with a redundant interaction: one row operation
    // separates the rows.
    CHECK(min_dual_tree_depth_row_equiv(mat(2, {{1, 1}, {0, 1}})) == 1);

    // On full-row-rank inputs the minimum equals the vector-contraction depth,
    // and any single presentation is an upper bound for it.
    MemoCache cache;
    auto run = [&cache](int h, int n) {
        for_all_matrices(2, h, n, [&](const std::vector<std::vector<int>>& rows) {
            Matrix a = mat(2, rows);
            if (rank_of(a) != a.rows()) return;
            int csd = depth_value(RepMatroid::from_matrix(a), DepthParam::ContractionStar, cache);
            CHECK(min_dual_tree_depth_row_equiv(a) == csd);
            CHECK(csd <= dual_tree_depth(a));
        });
    };
    run(2, 3);
    run(3, 3);
}

TEST_CASE("guards refuse oversized inputs") {
    // 13 elements exceed the ground-set bound.
    std::vector<std::vector<int>> wide(1, std::vector<int>(13, 1));
    RepMatroid big = RepMatroid::from_matrix(mat(2, wide));
    CHECK_THROWS_AS(depth_value(big, DepthParam::Contraction), GuardError);

    // (11^5 - 1) / 10 = 16105 projective candidates exceed the bound.
    std::vector<std::vector<int>> u56(5, std::vector<int>(6, 0));
    for (int i = 0; i < 5; ++i) {
        u56[i][i] = 1;
        u56[i][5] = 1;
    }
    RepMatroid m56 = RepMatroid::from_matrix(mat(11, u56));
    CHECK_THROWS_AS(depth_value(m56, DepthParam::ContractionStar), GuardError);

    // The guards argument is honored, not just the defaults: tightening the
    // bounds below a small instance refuses it.
    RepMatroid u23 = RepMatroid::from_matrix(mat(2, {{1, 0, 1}, {0, 1, 1}}));
    Guards tight_candidates;
    tight_candidates.max_candidates = 2; // u23 offers 3 contraction candidates
    CHECK_THROWS_AS(depth_value(u23, DepthParam::ContractionStar, tight_candidates), GuardError);
    Guards tight_elements;
    tight_elements.max_elements = 2;
    CHECK_THROWS_AS(depth_value(u23, DepthParam::Contraction, tight_elements), GuardError);

    // (3^10 - 1) / 2 = 29524 appended-row candidates exceed the bound.
    std::vector<std::vector<int>> ones(1, std::vector<int>(10, 1));
    RepMatroid m10 = RepMatroid::from_matrix(mat(3, ones));
    CHECK_THROWS_AS(depth_value(m10, DepthParam::DeletionStar), GuardError);

    CHECK_THROWS_AS(tree_depth(Graph(19)), GuardError);
    CHECK_THROWS_AS(min_dual_tree_depth_row_equiv(mat(5, {{1, 1}, {0, 1}})), GuardError);
    CHECK_THROWS_AS(min_dual_tree_depth_row_equiv(Matrix::identity(Field(2), 4)), GuardError);

    // Hard ceilings clamp raised bounds.
    Guards g;
    g.max_elements = 100;
    g.max_candidates = 1000000;
    g.max_td_vertices = 40;
    g.max_circuit_elements = 64;
    Guards c = g.clamped();
    CHECK(c.max_elements == Guards::kElementCeiling);
    CHECK(c.max_candidates == Guards::kCandidateCeiling);
    CHECK(c.max_td_vertices == Guards::kTdVertexCeiling);
    CHECK(c.max_circuit_elements == Guards::kElementCeiling);
}

TEST_CASE("memo cache semantics") {
    MemoCache cache;
    CHECK_FALSE(cache.lookup(DepthParam::Contraction, "k").has_value());
    cache.store(DepthParam::Contraction, "k", 3);
    CHECK(cache.lookup(DepthParam::Contraction, "k") == 3);
    CHECK_FALSE(cache.lookup(DepthParam::Deletion, "k").has_value());
    cache.store(DepthParam::Contraction, "k", 4);
    CHECK(cache.lookup(DepthParam::Contraction, "k") == 4);
    CHECK(cache.size() == 1);

    // Presentations of the same matroid share cache entries.
    MemoCache shared;
    RepMatroid a = RepMatroid::from_matrix(mat(2, {{1, 0, 1}, {0, 1, 1}}));
    RepMatroid b = RepMatroid::from_matrix(mat(2, {{1, 1, 0}, {1, 0, 1}}));
    int va = depth_value(a, DepthParam::Contraction, shared);
    std::size_t after_first = shared.size();
    int vb = depth_value(b, DepthParam::Contraction, shared);
    CHECK(va == vb);
    CHECK(shared.size() == after_first);
}
