#include "mdepth/depth.hpp"

#include <algorithm>
#include <limits>

namespace mdepth {

const char* to_string(DepthParam p) {
    switch (p) {
        case DepthParam::Contraction: return "cd";
        case DepthParam::Deletion: return "dd";
        case DepthParam::ContractionStar: return "csd";
        case DepthParam::DeletionStar: return "dsd";
    }
    return "?";
}

std::optional<DepthParam> depth_param_from_string(const std::string& s) {
    if (s == "cd") return DepthParam::Contraction;
    if (s == "dd") return DepthParam::Deletion;
    if (s == "csd") return DepthParam::ContractionStar;
    if (s == "dsd") return DepthParam::DeletionStar;
    return std::nullopt;
}

Certificate Certificate::base(BaseKind k, int value) {
    Certificate c;
    c.kind = Kind::Base;
    c.base_kind = k;
    c.claimed_value = value;
    return c;
}

Certificate Certificate::split(std::vector<LabelSet> parts, std::vector<Certificate> children) {
    Certificate c;
    c.kind = Kind::Split;
    c.parts = std::move(parts);
    c.children = std::move(children);
    c.claimed_value = 0;
    for (const Certificate& ch : c.children)
        c.claimed_value = std::max(c.claimed_value, ch.claimed_value);
    return c;
}

Certificate Certificate::step_element(Action a, Label e, Certificate child) {
    Certificate c;
    c.kind = Kind::Step;
    c.action = a;
    c.element = e;
    c.claimed_value = child.claimed_value + 1;
    c.children.push_back(std::move(child));
    return c;
}

Certificate Certificate::step_vector(Action a, Vec v, Certificate child) {
    Certificate c;
    c.kind = Kind::Step;
    c.action = a;
    c.vec = std::move(v);
    c.claimed_value = child.claimed_value + 1;
    c.children.push_back(std::move(child));
    return c;
}

std::optional<int> MemoCache::lookup(DepthParam p, const std::string& key) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = values_.find({static_cast<int>(p), key});
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

void MemoCache::store(DepthParam p, const std::string& key, int value) {
    std::lock_guard<std::mutex> lock(mu_);
    values_[{static_cast<int>(p), key}] = value;
}

std::size_t MemoCache::size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return values_.size();
}

namespace {

/// 1 + p + ... + p^(dim-1): number of projective points of F^dim, saturating
/// at limit + 1 to keep the guard comparison overflow-free.
long projective_count(int p, int dim, long limit) {
    long count = 0;
    long power = 1;
    for (int i = 0; i < dim; ++i) {
        count += power;
        if (count > limit) return limit + 1;
        if (power > limit) return limit + 1;
        power *= p;
    }
    return count;
}

bool is_base_case(const RepMatroid& m, DepthParam p) {
    switch (p) {
        case DepthParam::Contraction:
        case DepthParam::Deletion:
            return m.size() <= 1;
        case DepthParam::ContractionStar:
            return m.rank() == 0;
        case DepthParam::DeletionStar:
            return m.rank() == m.size();
    }
    return false;
}

int base_value(const RepMatroid& m, DepthParam p) {
    switch (p) {
        case DepthParam::Contraction:
        case DepthParam::Deletion:
            return m.empty() ? 0 : 1;
        case DepthParam::ContractionStar:
        case DepthParam::DeletionStar:
            return 0;
    }
    return 0;
}

Certificate base_certificate(const RepMatroid& m, DepthParam p) {
    switch (p) {
        case DepthParam::Contraction:
        case DepthParam::Deletion:
            return m.empty() ? Certificate::base(Certificate::BaseKind::RankZero, 0)
                             : Certificate::base(Certificate::BaseKind::SingleElement, 1);
        case DepthParam::ContractionStar:
            return Certificate::base(Certificate::BaseKind::RankZero, 0);
        case DepthParam::DeletionStar:
            return Certificate::base(Certificate::BaseKind::FullyIndependent, 0);
    }
    return Certificate::base(Certificate::BaseKind::RankZero, 0);
}

/// Appends v as a new row of the quotient representation; the matroid this
/// yields is the DeletionStar child for candidate v.
RepMatroid with_added_row(const RepMatroid& m, const Vec& v) {
    return RepMatroid::from_matrix(m.quotient().with_row_appended(v), m.labels());
}

struct DepthSolver {
    MemoCache& cache;
    Guards guards;

    DepthSolver(MemoCache& c, const Guards& g) : cache(c), guards(g.clamped()) {}

    void check_guards(const RepMatroid& m, DepthParam p) const {
        if (m.size() > guards.max_elements) {
            throw GuardError(std::string(to_string(p)) + " refused: " +
                             std::to_string(m.size()) + " elements exceed the guard of " +
                             std::to_string(guards.max_elements));
        }
        int dim = 0;
        if (p == DepthParam::ContractionStar) dim = m.rank();
        if (p == DepthParam::DeletionStar) dim = m.size();
        if (dim > 0) {
            long count = projective_count(m.field().modulus(), dim, guards.max_candidates);
            if (count > guards.max_candidates) {
                throw GuardError(std::string(to_string(p)) + " refused: candidate count exceeds the guard of " +
                                 std::to_string(guards.max_candidates));
            }
        }
    }

    /// Canonical candidate enumeration for a connected, non-base matroid.
    /// The visitor receives each child matroid together with its action
    /// payload; enumeration order defines the tie-breaking order.
    template <typename Visit>
    void for_each_child(const RepMatroid& m, DepthParam p, Visit&& visit) const {
        switch (p) {
            case DepthParam::Contraction:
                for (Label e : m.labels()) visit(e, std::optional<Vec>{}, m.contract_element(e));
                return;
            case DepthParam::Deletion:
                for (Label e : m.labels()) visit(e, std::optional<Vec>{}, m.delete_element(e));
                return;
            case DepthParam::ContractionStar:
                // The normalized representation has full row rank, so its
                // columns span F^rank and every projective point is eligible.
                for (const Vec& v : projective_points(m.field(), m.rank())) {
                    visit(Label{-1}, std::optional<Vec>{v}, m.contract_vector(v));
                }
                return;
            case DepthParam::DeletionStar: {
                std::vector<Vec> rows = m.quotient().row_vectors();
                for (const Vec& v : projective_points(m.field(), m.size())) {
                    if (in_span(v, rows)) continue; // already in the row space: no move
                    visit(Label{-1}, std::optional<Vec>{v}, with_added_row(m, v));
                }
                return;
            }
        }
    }

    int value(const RepMatroid& m, DepthParam p) {
        check_guards(m, p);
        if (is_base_case(m, p)) return base_value(m, p);
        std::string key = m.canonical_key(guards.max_canonical_cols, guards.canonical_node_budget);
        if (auto hit = cache.lookup(p, key)) return *hit;
        std::vector<LabelSet> comps = m.components(guards.max_circuit_elements);
        int result;
        if (comps.size() > 1) {
            result = 0;
            for (const LabelSet& part : comps) {
                result = std::max(result, value(m.restrict_to(part), p));
            }
        } else {
            result = std::numeric_limits<int>::max();
            for_each_child(m, p, [&](Label, const std::optional<Vec>&, const RepMatroid& child) {
                result = std::min(result, 1 + value(child, p));
            });
        }
        cache.store(p, key, result);
        return result;
    }

    Certificate certificate(const RepMatroid& m, DepthParam p) {
        check_guards(m, p);
        if (is_base_case(m, p)) return base_certificate(m, p);
        std::vector<LabelSet> comps = m.components(guards.max_circuit_elements);
        if (comps.size() > 1) {
            std::vector<Certificate> children;
            children.reserve(comps.size());
            for (const LabelSet& part : comps) {
                children.push_back(certificate(m.restrict_to(part), p));
            }
            return Certificate::split(comps, std::move(children));
        }
        int best = value(m, p);
        std::optional<Certificate> chosen;
        for_each_child(m, p, [&](Label e, const std::optional<Vec>& v, const RepMatroid& child) {
            if (chosen) return; // first minimizer wins: deterministic tie-break
            if (1 + value(child, p) != best) return;
            Certificate sub = certificate(child, p);
            switch (p) {
                case DepthParam::Contraction:
                    chosen = Certificate::step_element(Certificate::Action::ContractElement, e,
                                                       std::move(sub));
                    break;
                case DepthParam::Deletion:
                    chosen = Certificate::step_element(Certificate::Action::DeleteElement, e,
                                                       std::move(sub));
                    break;
                case DepthParam::ContractionStar:
                    chosen = Certificate::step_vector(Certificate::Action::ContractVector, *v,
                                                      std::move(sub));
                    break;
                case DepthParam::DeletionStar:
                    chosen = Certificate::step_vector(Certificate::Action::AddRow, *v,
                                                      std::move(sub));
                    break;
            }
        });
        return *chosen; // a connected non-base matroid always has a child
    }
};

} // namespace

int depth_value(const RepMatroid& m, DepthParam p, MemoCache& cache, const Guards& guards) {
    return DepthSolver(cache, guards).value(m, p);
}

int depth_value(const RepMatroid& m, DepthParam p, const Guards& guards) {
    MemoCache cache;
    return depth_value(m, p, cache, guards);
}

DepthResult depth_with_certificate(const RepMatroid& m, DepthParam p, MemoCache& cache,
                                   const Guards& guards) {
    DepthSolver solver(cache, guards);
    DepthResult r{solver.value(m, p), solver.certificate(m, p)};
    return r;
}

DepthResult depth_with_certificate(const RepMatroid& m, DepthParam p, const Guards& guards) {
    MemoCache cache;
    return depth_with_certificate(m, p, cache, guards);
}

namespace {

VerifyResult fail(const std::string& reason) {
    return VerifyResult{false, reason};
}

VerifyResult verify_node(const RepMatroid& m, DepthParam p, const Certificate& c,
                         const Guards& guards) {
    switch (c.kind) {
        case Certificate::Kind::Base: {
            switch (c.base_kind) {
                case Certificate::BaseKind::RankZero:
                    if (p == DepthParam::ContractionStar) {
                        if (m.rank() != 0) return fail("rank-zero base applied to a matroid of positive rank");
                    } else if (p == DepthParam::Contraction || p == DepthParam::Deletion) {
                        if (!m.empty()) return fail("rank-zero base is only the empty-matroid base for this parameter");
                    } else {
                        return fail("rank-zero base does not belong to this parameter");
                    }
                    if (c.claimed_value != 0) return fail("rank-zero base must claim 0");
                    return {true, ""};
                case Certificate::BaseKind::SingleElement:
                    if (p != DepthParam::Contraction && p != DepthParam::Deletion) {
                        return fail("single-element base does not belong to this parameter");
                    }
                    if (m.size() != 1) return fail("single-element base applied to " +
                                                   std::to_string(m.size()) + " elements");
                    if (c.claimed_value != 1) return fail("single-element base must claim 1");
                    return {true, ""};
                case Certificate::BaseKind::FullyIndependent:
                    if (p != DepthParam::DeletionStar) {
                        return fail("fully-independent base does not belong to this parameter");
                    }
                    if (m.rank() != m.size()) return fail("fully-independent base applied to a dependent matroid");
                    if (c.claimed_value != 0) return fail("fully-independent base must claim 0");
                    return {true, ""};
            }
            return fail("unknown base kind");
        }
        case Certificate::Kind::Split: {
            if (c.parts.size() != c.children.size()) return fail("split arity mismatch");
            if (c.parts.size() < 2) return fail("split needs at least two components");
            std::vector<LabelSet> comps = m.components(guards.max_circuit_elements);
            std::vector<LabelSet> sorted_parts = c.parts;
            std::sort(sorted_parts.begin(), sorted_parts.end());
            std::vector<LabelSet> sorted_comps = comps;
            std::sort(sorted_comps.begin(), sorted_comps.end());
            if (sorted_parts != sorted_comps) {
                return fail("split parts are not the connected components");
            }
            int max_child = 0;
            for (size_t i = 0; i < c.parts.size(); ++i) {
                VerifyResult r = verify_node(m.restrict_to(c.parts[i]), p, c.children[i], guards);
                if (!r.ok) return r;
                max_child = std::max(max_child, c.children[i].claimed_value);
            }
            if (c.claimed_value != max_child) return fail("split claims a value other than the maximum of its children");
            return {true, ""};
        }
        case Certificate::Kind::Step: {
            if (c.children.size() != 1) return fail("step needs exactly one child");
            if (is_base_case(m, p)) return fail("step applied where a base case holds");
            if (!m.is_connected(guards.max_circuit_elements)) return fail("step applied to a disconnected matroid");
            const Certificate& child = c.children.front();
            if (c.claimed_value != child.claimed_value + 1) {
                return fail("step claims a value other than 1 + child");
            }
            switch (p) {
                case DepthParam::Contraction: {
                    if (c.action != Certificate::Action::ContractElement) return fail("illegal action for cd");
                    if (!m.has_label(c.element)) return fail("step contracts an unknown element");
                    return verify_node(m.contract_element(c.element), p, child, guards);
                }
                case DepthParam::Deletion: {
                    if (c.action != Certificate::Action::DeleteElement) return fail("illegal action for dd");
                    if (!m.has_label(c.element)) return fail("step deletes an unknown element");
                    return verify_node(m.delete_element(c.element), p, child, guards);
                }
                case DepthParam::ContractionStar: {
                    if (c.action != Certificate::Action::ContractVector) return fail("illegal action for csd");
                    if (!c.vec) return fail("contract-vector step is missing its vector");
                    if (c.vec->dim() != m.rank() || c.vec->is_zero()) {
                        return fail("contract-vector step has an invalid vector");
                    }
                    return verify_node(m.contract_vector(*c.vec), p, child, guards);
                }
                case DepthParam::DeletionStar: {
                    if (c.action != Certificate::Action::AddRow) return fail("illegal action for dsd");
                    if (!c.vec) return fail("add-row step is missing its vector");
                    if (c.vec->dim() != m.size()) return fail("add-row step has an invalid vector");
                    return verify_node(with_added_row(m, *c.vec), p, child, guards);
                }
            }
            return fail("unknown parameter");
        }
    }
    return fail("unknown certificate node kind");
}

} // namespace

VerifyResult verify_certificate(const RepMatroid& m, DepthParam p, const Certificate& cert,
                                const Guards& guards) {
    try {
        return verify_node(m, p, cert, guards.clamped());
    } catch (const InputError& e) {
        return fail(std::string("malformed certificate: ") + e.what());
    }
}

int subspace_contraction_depth(const SubspaceMatroid& s, const Guards& raw_guards) {
    Guards guards = raw_guards.clamped();
    const int n = s.ambient_dimension();
    if (n > guards.max_elements) {
        throw GuardError("subspace contraction depth refused: " + std::to_string(n) +
                         " elements exceed the guard of " + std::to_string(guards.max_elements));
    }
    RepMatroid m = s.as_matroid();
    if (m.rank() == 0) return 0;
    std::vector<LabelSet> comps = m.components(guards.max_circuit_elements);
    if (comps.size() > 1) {
        int best = 0;
        for (const LabelSet& part : comps) {
            SubspaceMatroid sub = SubspaceMatroid::from_matroid(m.restrict_to(part));
            best = std::max(best, subspace_contraction_depth(sub, guards));
        }
        return best;
    }
    if (projective_count(s.field().modulus(), n, guards.max_candidates) > guards.max_candidates) {
        throw GuardError("subspace contraction depth refused: candidate count exceeds the guard of " +
                         std::to_string(guards.max_candidates));
    }
    int best = std::numeric_limits<int>::max();
    for (const Vec& v : projective_points(s.field(), n)) {
        if (s.orthogonal_contains(v)) continue; // the functional vanishes on W: no move
        best = std::min(best, 1 + subspace_contraction_depth(contract_hyperplane(s, v), guards));
    }
    return best;
}

int subspace_deletion_depth(const SubspaceMatroid& s, const Guards& raw_guards) {
    Guards guards = raw_guards.clamped();
    const int n = s.ambient_dimension();
    if (n > guards.max_elements) {
        throw GuardError("subspace deletion depth refused: " + std::to_string(n) +
                         " elements exceed the guard of " + std::to_string(guards.max_elements));
    }
    if (s.dimension() == n) return 0; // W is the whole space: free matroid
    RepMatroid m = s.as_matroid();
    std::vector<LabelSet> comps = m.components(guards.max_circuit_elements);
    if (comps.size() > 1) {
        int best = 0;
        for (const LabelSet& part : comps) {
            SubspaceMatroid sub = SubspaceMatroid::from_matroid(m.restrict_to(part));
            best = std::max(best, subspace_deletion_depth(sub, guards));
        }
        return best;
    }
    if (projective_count(s.field().modulus(), n, guards.max_candidates) > guards.max_candidates) {
        throw GuardError("subspace deletion depth refused: candidate count exceeds the guard of " +
                         std::to_string(guards.max_candidates));
    }
    int best = std::numeric_limits<int>::max();
    for (const Vec& v : projective_points(s.field(), n)) {
        if (s.contains(v)) continue; // already in W: no move
        best = std::min(best, 1 + subspace_deletion_depth(adjoin_vector(s, v), guards));
    }
    return best;
}

Graph dual_graph(const Matrix& a) {
    Graph g(a.rows());
    for (int c = 0; c < a.cols(); ++c) {
        std::vector<int> support;
        for (int r = 0; r < a.rows(); ++r) {
            if (a.at(r, c) != 0) support.push_back(r);
        }
        for (size_t i = 0; i < support.size(); ++i)
            for (size_t j = i + 1; j < support.size(); ++j)
                g.add_edge(support[i], support[j]);
    }
    return g;
}

int dual_tree_depth(const Matrix& a, const Guards& guards) {
    return dual_tree_depth_witness(a, guards).value;
}

TreeDepthResult dual_tree_depth_witness(const Matrix& a, const Guards& guards) {
    return tree_depth(dual_graph(a), guards.clamped().max_td_vertices);
}

int min_dual_tree_depth_row_equiv(const Matrix& a, const Guards& guards) {
    const int h = a.rows();
    const int p = a.field().modulus();
    if (h > 3 || (p != 2 && p != 3)) {
        throw GuardError("row-equivalence search refused: supported range is at most 3 rows over GF(2) or GF(3)");
    }
    if (h == 0) return 0;
    const Field& f = a.field();
    int best = std::numeric_limits<int>::max();
    // All invertible h x h matrices, by filtering the full matrix space.
    for (const Vec& flat : all_vectors(f, h * h)) {
        Matrix t(f, h, h);
        for (int r = 0; r < h; ++r)
            for (int c = 0; c < h; ++c) t.at(r, c) = flat[r * h + c];
        if (rank_of(t) != h) continue;
        best = std::min(best, dual_tree_depth(multiply(t, a), guards));
    }
    return best;
}

} // namespace mdepth
