#include "mdepth/search.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

#include "mdepth/duality.hpp"
#include "mdepth/matrix_tree.hpp"

namespace mdepth {

namespace {

std::string row_brief(const Matrix& a, int r) {
    const char* sep = a.field().modulus() > 9 ? "," : "";
    std::string out;
    for (int c = 0; c < a.cols(); ++c) {
        if (c > 0) out += sep;
        out += std::to_string(int(a.at(r, c)));
    }
    return out;
}

std::string matrix_brief(const Matrix& a) {
    std::string out = "[";
    for (int r = 0; r < a.rows(); ++r) {
        if (r > 0) out += ";";
        out += row_brief(a, r);
    }
    return out + "]";
}

long pow_saturated(int base, int exp, long cap) {
    long v = 1;
    for (int i = 0; i < exp; ++i) {
        v *= base;
        if (v > cap) return cap + 1;
    }
    return v;
}

/// Walks every (column count, rank, pivot set) triple of the window in a
/// fixed order; fn also receives the free positions, row-major.
template <typename Fn>
void walk_pivot_sets(int max_rows, int max_cols, Fn&& fn) {
    for (int n = 1; n <= max_cols; ++n) {
        const int rmax = std::min(max_rows, n);
        for (int r = 0; r <= rmax; ++r) {
            std::vector<int> piv(r);
            for (int i = 0; i < r; ++i) piv[i] = i;
            while (true) {
                std::vector<std::pair<int, int>> free_pos;
                for (int i = 0; i < r; ++i) {
                    for (int c = piv[i] + 1; c < n; ++c) {
                        if (!std::binary_search(piv.begin(), piv.end(), c)) {
                            free_pos.push_back({i, c});
                        }
                    }
                }
                fn(n, r, piv, free_pos);
                int i = r - 1;
                while (i >= 0 && piv[i] == n - r + i) --i;
                if (i < 0) break;
                ++piv[i];
                for (int j = i + 1; j < r; ++j) piv[j] = piv[j - 1] + 1;
            }
        }
    }
}

} // namespace

std::string matroid_brief(const RepMatroid& m) {
    return "p=" + std::to_string(m.field().modulus()) + " " + std::to_string(m.rank()) + "x" +
           std::to_string(m.size()) + " " + matrix_brief(m.quotient());
}

std::string vec_brief(const Vec& v) {
    std::string out = "(";
    for (int i = 0; i < v.dim(); ++i) {
        if (i > 0) out += ",";
        out += std::to_string(int(v[i]));
    }
    return out + ")";
}

long enumeration_size(const EnumerationSpec& spec) {
    const int p = spec.field.modulus();
    long total = 0;
    walk_pivot_sets(spec.max_rows, spec.max_cols,
                    [&](int, int, const std::vector<int>&, const std::vector<std::pair<int, int>>& free_pos) {
                        if (total > kEnumerationBudget) return;
                        total += pow_saturated(p, static_cast<int>(free_pos.size()),
                                               kEnumerationBudget);
                        if (total > kEnumerationBudget) total = kEnumerationBudget + 1;
                    });
    return total;
}

void enumerate_canonical(const EnumerationSpec& spec,
                         const std::function<void(const RepMatroid&)>& visit,
                         const Guards& guards) {
    if (spec.max_rows < 0 || spec.max_cols < 0) {
        throw InputError("enumeration window sizes must be nonnegative");
    }
    const Guards g = guards.clamped();
    if (spec.max_cols > g.max_elements) {
        throw GuardError("enumeration window exceeds the element bound (" +
                         std::to_string(spec.max_cols) + " > " + std::to_string(g.max_elements) +
                         " columns)");
    }
    if (enumeration_size(spec) > kEnumerationBudget) {
        throw GuardError("enumeration window exceeds the echelon-form budget of " +
                         std::to_string(kEnumerationBudget));
    }
    const Field& f = spec.field;
    const int p = f.modulus();
    std::set<std::string> seen;
    walk_pivot_sets(spec.max_rows, spec.max_cols,
                    [&](int n, int r, const std::vector<int>& piv,
                        const std::vector<std::pair<int, int>>& free_pos) {
        std::vector<Scalar> digits(free_pos.size(), 0);
        while (true) {
            Matrix a(f, r, n);
            for (int i = 0; i < r; ++i) a.at(i, piv[i]) = 1;
            for (size_t k = 0; k < free_pos.size(); ++k) {
                a.at(free_pos[k].first, free_pos[k].second) = digits[k];
            }
            RepMatroid m = RepMatroid::from_matrix(a);
            bool fresh = true;
            if (spec.dedupe) {
                fresh = seen.insert(m.canonical_key(g.max_canonical_cols,
                                                    g.canonical_node_budget)).second;
            }
            if (fresh) visit(m);
            // Odometer on the free entries, last position fastest.
            size_t k = digits.size();
            while (k > 0 && digits[k - 1] == p - 1) digits[--k] = 0;
            if (k == 0) break;
            ++digits[k - 1];
        }
    });
}

std::vector<RepMatroid> enumerate_canonical(const EnumerationSpec& spec, const Guards& guards) {
    std::vector<RepMatroid> out;
    enumerate_canonical(spec, [&](const RepMatroid& m) { out.push_back(m); }, guards);
    return out;
}

ObstructionReport find_obstructions(DepthParam param, int d, const EnumerationSpec& window,
                                    const Guards& guards) {
    if (d < 0) throw InputError("obstruction depth must be nonnegative");
    EnumerationSpec spec = window;
    spec.dedupe = true;
    ObstructionReport rep{param, d, spec, {}, 0};
    const bool delete_side =
        param == DepthParam::Contraction || param == DepthParam::ContractionStar;
    MemoCache cache;
    enumerate_canonical(spec, [&](const RepMatroid& m) {
        if (depth_value(m, param, cache, guards) != d) return;
        std::vector<int> moves;
        for (Label e : m.labels()) {
            RepMatroid child = delete_side ? m.delete_element(e) : m.contract_element(e);
            int v = depth_value(child, param, cache, guards);
            if (v >= d) return; // not a witness
            moves.push_back(v);
        }
        ObstructionWitness w{m, d, std::move(moves), false, false};
        if (param == DepthParam::Contraction && m.size() <= 5) {
            w.set_checked = true;
            w.set_minimal = true;
            const LabelSet ground = m.ground_set();
            const unsigned full = 1u << ground.size();
            for (unsigned mask = 1; mask < full && w.set_minimal; ++mask) {
                LabelSet s;
                for (size_t i = 0; i < ground.size(); ++i) {
                    if (mask & (1u << i)) s.push_back(ground[i]);
                }
                if (depth_value(m.delete_elements(s), param, cache, guards) >= d) {
                    w.set_minimal = false;
                }
            }
        }
        rep.max_witness_size = std::max(rep.max_witness_size, m.size());
        rep.witnesses.push_back(std::move(w));
    }, guards);
    return rep;
}

std::string ObstructionReport::to_text() const {
    const bool delete_side =
        param == DepthParam::Contraction || param == DepthParam::ContractionStar;
    std::string out = "obstructions param=" + std::string(to_string(param)) +
                      " d=" + std::to_string(depth) +
                      " p=" + std::to_string(window.field.modulus()) +
                      " rows<=" + std::to_string(window.max_rows) +
                      " cols<=" + std::to_string(window.max_cols) +
                      " move=" + (delete_side ? "delete" : "contract") + "\n";
    for (const ObstructionWitness& w : witnesses) {
        out += "witness " + matroid_brief(w.matroid) + " value=" + std::to_string(w.value) +
               " moves:";
        const std::vector<Label>& labels = w.matroid.labels();
        for (size_t i = 0; i < labels.size(); ++i) {
            out += " " + label_name(labels[i]) + "->" + std::to_string(w.move_values[i]);
        }
        if (param == DepthParam::Contraction) {
            out += w.set_checked ? (w.set_minimal ? " set-form=minimal" : " set-form=not-minimal")
                                 : " set-form=unchecked";
        } else if (param == DepthParam::ContractionStar) {
            out += " set-form=implied";
        }
        out += "\n";
    }
    out += "witnesses=" + std::to_string(witnesses.size()) +
           " max-size=" + std::to_string(max_witness_size) + "\n";
    return out;
}

ProgressiveReport progressive_vectors(const RepMatroid& m, const Guards& guards) {
    const Guards g = guards.clamped();
    MemoCache cache;
    ProgressiveReport rep;
    rep.instance = matroid_brief(m);
    rep.value = depth_value(m, DepthParam::ContractionStar, cache, g);
    if (m.rank() > 0) {
        const int p = m.field().modulus();
        const long candidates = (pow_saturated(p, m.rank(), g.max_candidates * (p - 1) + 1) - 1) /
                                (p - 1);
        if (candidates > g.max_candidates) {
            throw GuardError("candidate vectors exceed the bound (" + std::to_string(candidates) +
                             " > " + std::to_string(g.max_candidates) + ")");
        }
        for (const Vec& v : projective_points(m.field(), m.rank())) {
            if (depth_value(m.contract_vector(v), DepthParam::ContractionStar, cache, g) <
                rep.value) {
                rep.vectors.push_back(v);
            }
        }
    }
    const LabelSet ground = m.ground_set();
    if (static_cast<int>(ground.size()) > g.max_elements) {
        throw GuardError("ground set exceeds the element bound (" +
                         std::to_string(ground.size()) + " > " + std::to_string(g.max_elements) +
                         " elements)");
    }
    const unsigned full = 1u << ground.size();
    for (unsigned mask = 0; mask < full; ++mask) {
        LabelSet s;
        for (size_t i = 0; i < ground.size(); ++i) {
            if (mask & (1u << i)) s.push_back(ground[i]);
        }
        if (depth_value(m.restrict_to(s), DepthParam::ContractionStar, cache, g) != rep.value) {
            continue;
        }
        bool minimal = true;
        for (size_t i = 0; i < s.size() && minimal; ++i) {
            LabelSet t = s;
            t.erase(t.begin() + static_cast<long>(i));
            if (depth_value(m.restrict_to(t), DepthParam::ContractionStar, cache, g) ==
                rep.value) {
                minimal = false;
            }
        }
        if (!minimal) continue;
        ProgressiveReport::Restriction rct;
        rct.elements = s;
        rct.spans_all = true;
        std::vector<Vec> cols;
        for (Label e : s) cols.push_back(m.column_of(e));
        for (const Vec& v : rep.vectors) {
            if (!in_span(v, cols)) {
                rct.spans_all = false;
                break;
            }
        }
        rep.restrictions.push_back(std::move(rct));
    }
    std::sort(rep.restrictions.begin(), rep.restrictions.end(),
              [](const ProgressiveReport::Restriction& a, const ProgressiveReport::Restriction& b) {
                  if (a.elements.size() != b.elements.size()) {
                      return a.elements.size() < b.elements.size();
                  }
                  return a.elements < b.elements;
              });
    return rep;
}

std::string ProgressiveReport::to_text() const {
    std::string out = "progressive " + instance + " csd=" + std::to_string(value) + "\n";
    out += "vectors (" + std::to_string(vectors.size()) + "):";
    for (const Vec& v : vectors) out += " " + vec_brief(v);
    out += "\n";
    for (const Restriction& r : restrictions) {
        out += "restriction " + label_set_name(r.elements) +
               (r.spans_all ? " spans-all=yes" : " spans-all=no") + "\n";
    }
    return out;
}

namespace {

struct InstanceOutcome {
    std::string line;
    std::vector<std::string> failures;
};

/// Per-instance property check; collects failures with the values embedded.
struct Checks {
    explicit Checks(const RepMatroid& m) : brief(matroid_brief(m)) {}

    void expect(bool ok, const std::string& what) {
        ++done;
        if (!ok) failures.push_back("FAIL " + brief + ": " + what);
    }

    InstanceOutcome outcome() const {
        return {(failures.empty() ? "ok   " : "FAIL ") + brief + " checks=" +
                    std::to_string(done),
                failures};
    }

    std::string brief;
    int done = 0;
    std::vector<std::string> failures;
};

std::string eq_msg(const std::string& lhs_name, long lhs, const std::string& rhs_name, long rhs) {
    return lhs_name + "=" + std::to_string(lhs) + " but " + rhs_name + "=" + std::to_string(rhs);
}

LabelSet subset_of(const LabelSet& ground, unsigned mask) {
    LabelSet s;
    for (size_t i = 0; i < ground.size(); ++i) {
        if (mask & (1u << i)) s.push_back(ground[i]);
    }
    return s;
}

InstanceOutcome check_duality(const RepMatroid& m, MemoCache& cache, const Guards& g) {
    Checks ck(m);
    RepMatroid md = dual(m);
    int csd = depth_value(m, DepthParam::ContractionStar, cache, g);
    int dsd_dual = depth_value(md, DepthParam::DeletionStar, cache, g);
    ck.expect(csd == dsd_dual, eq_msg("csd(M)", csd, "dsd(M*)", dsd_dual));
    int cd = depth_value(m, DepthParam::Contraction, cache, g);
    int dd_dual = depth_value(md, DepthParam::Deletion, cache, g);
    ck.expect(cd == dd_dual, eq_msg("cd(M)", cd, "dd(M*)", dd_dual));
    ck.expect(m.components() == md.components(), "components of M and M* differ");
    for (Label e : m.labels()) {
        ck.expect(same_independence(dual(m.delete_element(e)), md.contract_element(e)),
                  "(M\\e)* != M*/e at " + label_name(e));
    }
    return ck.outcome();
}

InstanceOutcome check_bullet_duality(const RepMatroid& m, MemoCache&, const Guards&) {
    Checks ck(m);
    SubspaceMatroid w = SubspaceMatroid::from_matroid(m);
    SubspaceMatroid wd = dual(w);
    for (const Vec& v : projective_points(m.field(), m.size())) {
        ck.expect(dual(contract_hyperplane(w, v)) == adjoin_vector(wd, v),
                  "dual of the hyperplane contraction is not the adjoined dual at v=" +
                      vec_brief(v));
    }
    return ck.outcome();
}

InstanceOutcome check_depth_equalities(const RepMatroid& m, MemoCache& cache, const Guards& g) {
    Checks ck(m);
    SubspaceMatroid w = SubspaceMatroid::from_matroid(m);
    int csd = depth_value(m, DepthParam::ContractionStar, cache, g);
    int cbd = subspace_contraction_depth(w, g);
    ck.expect(csd == cbd, eq_msg("csd", csd, "subspace contraction depth", cbd));
    int dsd = depth_value(m, DepthParam::DeletionStar, cache, g);
    int dbd = subspace_deletion_depth(w, g);
    ck.expect(dsd == dbd, eq_msg("dsd", dsd, "subspace deletion depth", dbd));
    return ck.outcome();
}

InstanceOutcome check_circuit_bounds(const RepMatroid& m, MemoCache& cache, const Guards& g) {
    Checks ck(m);
    int c = 1;
    for (const LabelSet& circuit : m.circuits(g.max_circuit_elements)) {
        c = std::max(c, static_cast<int>(circuit.size()));
    }
    int cd = depth_value(m, DepthParam::Contraction, cache, g);
    int dd = depth_value(m, DepthParam::Deletion, cache, g);
    int csd = depth_value(m, DepthParam::ContractionStar, cache, g);
    int dsd = depth_value(m, DepthParam::DeletionStar, cache, g);
    ck.expect(c <= (1L << cd), eq_msg("largest circuit", c, "2^cd with cd", cd));
    ck.expect(cd <= c * (c + 1) / 2, eq_msg("cd", cd, "c(c+1)/2 with c", c));
    ck.expect(c <= (1L << csd), eq_msg("largest circuit", c, "2^csd with csd", csd));
    ck.expect(csd <= c * c, eq_msg("csd", csd, "c^2 with c", c));
    ck.expect(csd <= cd, eq_msg("csd", csd, "cd", cd));
    ck.expect(cd <= ((1L << (2 * csd)) + (1L << csd)) / 2,
              eq_msg("cd", cd, "(2^(2csd)+2^csd)/2 with csd", csd));
    ck.expect(dsd <= dd, eq_msg("dsd", dsd, "dd", dd));
    return ck.outcome();
}

InstanceOutcome check_monotonicity(const RepMatroid& m, MemoCache& cache, const Guards& g) {
    Checks ck(m);
    if (m.size() > 5) {
        return {"skip " + ck.brief + " (size > 5)", {}};
    }
    int d = depth_value(m, DepthParam::ContractionStar, cache, g);
    const LabelSet ground = m.ground_set();
    for (unsigned mask = 0; mask < (1u << ground.size()); ++mask) {
        LabelSet s = subset_of(ground, mask);
        int ds = depth_value(m.restrict_to(s), DepthParam::ContractionStar, cache, g);
        ck.expect(ds <= d, "csd(M[" + label_set_name(s) + "])=" + std::to_string(ds) +
                               " exceeds csd(M)=" + std::to_string(d));
    }
    return ck.outcome();
}

InstanceOutcome check_roundtrip(const RepMatroid& m, MemoCache&, const Guards& g) {
    Checks ck(m);
    const Matrix& a = m.quotient();
    MatrixTree t = encode(a, g);
    ck.expect(decode(t) == a, "decode(encode(A)) differs from A");
    int tdd = dual_tree_depth(a, g);
    ck.expect(t.depth() <= tdd + 1,
              eq_msg("tree depth", t.depth(), "dual tree-depth + 1 with td_D", tdd));
    return ck.outcome();
}

InstanceOutcome check_ignore_rows(const RepMatroid& m, MemoCache&, const Guards& g) {
    Checks ck(m);
    MatrixTree t = encode(m.quotient(), g);
    for (const TreeNode& node : t.nodes()) {
        if (node.parent == -1) {
            ck.expect(decode(drop_column_leaves(t, node.id)).cols() == 0,
                      "dropping every column leaf left columns behind");
            continue;
        }
        Matrix pruned = decode(prune(t, {node.id}));
        Matrix kept_rows = decode(drop_column_leaves(t, node.id));
        ck.expect(same_independence(RepMatroid::from_matrix(pruned),
                                    RepMatroid::from_matrix(kept_rows)),
                  "pruning node " + std::to_string(node.id) +
                      " changes the matroid relative to dropping its column leaves");
    }
    return ck.outcome();
}

InstanceOutcome check_row_equiv_td(const RepMatroid& m, MemoCache& cache, const Guards& g) {
    Checks ck(m);
    const Matrix& a = m.quotient();
    int csd = depth_value(m, DepthParam::ContractionStar, cache, g);
    int tdd = dual_tree_depth(a, g);
    ck.expect(csd <= tdd, eq_msg("csd", csd, "dual tree-depth", tdd));
    const int p = m.field().modulus();
    if (a.rows() <= 3 && (p == 2 || p == 3)) {
        int best = min_dual_tree_depth_row_equiv(a, g);
        ck.expect(best == csd, eq_msg("min dual tree-depth over row-equivalents", best,
                                      "csd", csd));
    }
    return ck.outcome();
}

InstanceOutcome check_few_moves_span(const RepMatroid& m, MemoCache&, const Guards& g) {
    Checks ck(m);
    ProgressiveReport rep = progressive_vectors(m, g);
    ck.expect(!rep.restrictions.empty(), "no deletion-minimal depth-preserving restriction");
    for (const ProgressiveReport::Restriction& r : rep.restrictions) {
        ck.expect(r.spans_all, "a progressive vector escapes the span of " +
                                   label_set_name(r.elements));
    }
    if (!rep.restrictions.empty()) {
        const int smallest = static_cast<int>(rep.restrictions.front().elements.size());
        const long cap = 1L << 30;
        const long bound = pow_saturated(m.field().modulus(), smallest, cap);
        ck.expect(static_cast<long>(rep.vectors.size()) <= bound,
                  eq_msg("progressive count", static_cast<long>(rep.vectors.size()),
                         "p^(smallest restriction) with size", smallest));
    }
    return ck.outcome();
}

using CheckFn = InstanceOutcome (*)(const RepMatroid&, MemoCache&, const Guards&);

const std::vector<std::pair<std::string, CheckFn>>& suite_registry() {
    static const std::vector<std::pair<std::string, CheckFn>> table = {
        {"duality", check_duality},
        {"bullet-duality", check_bullet_duality},
        {"depth-equalities", check_depth_equalities},
        {"circuit-bounds", check_circuit_bounds},
        {"monotonicity", check_monotonicity},
        {"roundtrip", check_roundtrip},
        {"ignore-rows", check_ignore_rows},
        {"row-equiv-td", check_row_equiv_td},
        {"few-moves-span", check_few_moves_span},
    };
    return table;
}

std::vector<InstanceOutcome> map_instances(const std::vector<RepMatroid>& instances, int workers,
                                           CheckFn check, MemoCache& cache, const Guards& g) {
    const long n = static_cast<long>(instances.size());
    std::vector<InstanceOutcome> out(static_cast<size_t>(n));
    auto run_one = [&](long i) {
        try {
            out[static_cast<size_t>(i)] = check(instances[static_cast<size_t>(i)], cache, g);
        } catch (const std::exception& e) {
            const std::string brief = matroid_brief(instances[static_cast<size_t>(i)]);
            out[static_cast<size_t>(i)] = {"FAIL " + brief + " checks=0",
                                           {"FAIL " + brief + ": exception: " + e.what()}};
        }
    };
    int w = std::clamp(workers, 1, 64);
    if (w > n) w = static_cast<int>(n);
    if (w <= 1) {
        for (long i = 0; i < n; ++i) run_one(i);
        return out;
    }
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(w));
    for (int i = 0; i < w; ++i) {
        pool.emplace_back([&] {
            for (long k = next.fetch_add(1); k < n; k = next.fetch_add(1)) run_one(k);
        });
    }
    for (std::thread& th : pool) th.join();
    return out;
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : suite_registry()) out.push_back(name);
        return out;
    }();
    return names;
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& config) {
    CheckFn check = nullptr;
    for (const auto& [n, fn] : suite_registry()) {
        if (n == name) check = fn;
    }
    if (check == nullptr) {
        std::string known;
        for (const std::string& n : suite_names()) known += (known.empty() ? "" : ", ") + n;
        throw InputError("unknown suite " + name + " (expected one of: " + known + ")");
    }
    const Guards g = config.guards.clamped();
    EnumerationSpec spec{config.field, config.max_rows, config.max_cols, true};
    std::vector<RepMatroid> instances = enumerate_canonical(spec, g);
    MemoCache cache;
    std::vector<InstanceOutcome> results = map_instances(instances, config.workers, check,
                                                         cache, g);
    SuiteReport rep;
    rep.name = name;
    rep.instances = static_cast<long>(instances.size());
    for (InstanceOutcome& r : results) {
        rep.lines.push_back(std::move(r.line));
        for (std::string& f : r.failures) rep.counterexamples.push_back(std::move(f));
    }
    return rep;
}

std::string SuiteReport::to_text() const {
    std::string out = "suite " + name + ": instances=" + std::to_string(instances) + "\n";
    for (const std::string& line : lines) out += line + "\n";
    if (!counterexamples.empty()) {
        out += "counterexamples:\n";
        for (const std::string& c : counterexamples) out += c + "\n";
    }
    out += std::string("result: ") + (passed() ? "pass" : "fail") + "\n";
    return out;
}

} // namespace mdepth
