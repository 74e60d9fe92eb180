#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "mdepth/duality.hpp"
#include "mdepth/graph.hpp"
#include "mdepth/guards.hpp"
#include "mdepth/matroid.hpp"

namespace mdepth {

/// The four recursive depth parameters.
///
///   Contraction      (cd):  connected -> 1 + min over element contractions
///   Deletion         (dd):  connected -> 1 + min over element deletions
///   ContractionStar  (csd): connected -> 1 + min over vector contractions
///   DeletionStar     (dsd): connected -> 1 + min over appended rows
///
/// Disconnected matroids take the maximum over components.  Base cases:
/// cd/dd are 1 on single elements (0 when empty), csd is 0 at rank zero,
/// dsd is 0 when every element is independent.
enum class DepthParam { Contraction, Deletion, ContractionStar, DeletionStar };

const char* to_string(DepthParam p); // "cd", "dd", "csd", "dsd"
std::optional<DepthParam> depth_param_from_string(const std::string& s);

/// Recursion witness.  Every node carries the value it claims for the matroid
/// it is applied to; replaying the actions reproduces and checks that value.
struct Certificate {
    enum class Kind { Base, Split, Step };
    enum class BaseKind { RankZero, SingleElement, FullyIndependent };
    enum class Action { ContractElement, DeleteElement, ContractVector, AddRow };

    Kind kind = Kind::Base;
    int claimed_value = 0;

    BaseKind base_kind = BaseKind::RankZero; // Base only

    std::vector<LabelSet> parts; // Split only, parallel to children

    Action action = Action::ContractElement; // Step only
    Label element = -1;                      // element actions
    std::optional<Vec> vec;                  // vector actions

    std::vector<Certificate> children; // Split: one per part; Step: exactly one

    static Certificate base(BaseKind k, int value);
    static Certificate split(std::vector<LabelSet> parts, std::vector<Certificate> children);
    static Certificate step_element(Action a, Label e, Certificate child);
    static Certificate step_vector(Action a, Vec v, Certificate child);
};

/// Value cache shared across depth computations, keyed by canonical key, so
/// matroids differing only by row operations and column relabeling share an
/// entry.  Certificates are not cached: a witness mentions concrete labels
/// and coordinates, which do not survive that identification.
class MemoCache {
public:
    std::optional<int> lookup(DepthParam p, const std::string& key) const;
    void store(DepthParam p, const std::string& key, int value);
    std::size_t size() const;

private:
    mutable std::mutex mu_;
    std::map<std::pair<int, std::string>, int> values_;
};

struct DepthResult {
    int value;
    Certificate certificate;
};

int depth_value(const RepMatroid& m, DepthParam p, MemoCache& cache, const Guards& guards = {});
int depth_value(const RepMatroid& m, DepthParam p, const Guards& guards = {});

/// Value plus a deterministically chosen witness: ties between minimizing
/// candidates go to the smallest label (element steps) or lexicographically
/// least projective representative (vector steps).
DepthResult depth_with_certificate(const RepMatroid& m, DepthParam p, MemoCache& cache,
                                   const Guards& guards = {});
DepthResult depth_with_certificate(const RepMatroid& m, DepthParam p, const Guards& guards = {});

struct VerifyResult {
    bool ok;
    std::string reason; // empty when ok
    explicit operator bool() const { return ok; }
};

/// Replays a certificate against a matroid: structural checks, legal action
/// set for the parameter, and the claimed-value arithmetic.  Accepts exactly
/// the certificates that prove parameter(m) <= claimed value.
VerifyResult verify_certificate(const RepMatroid& m, DepthParam p, const Certificate& cert,
                                const Guards& guards = {});

/// ContractionStar recomputed on the subspace view: repeatedly replace W by
/// the kernel of a functional, taking components apart first.  Must agree
/// with depth_value(..., ContractionStar, ...) on every instance; the two
/// routes share no recursion code, which is what makes the cross-check
/// meaningful.
int subspace_contraction_depth(const SubspaceMatroid& s, const Guards& guards = {});

/// DeletionStar recomputed on the subspace view by growing W one vector at a
/// time.  Must agree with depth_value(..., DeletionStar, ...).
int subspace_deletion_depth(const SubspaceMatroid& s, const Guards& guards = {});

/// Row-interaction graph: one vertex per row of a, an edge where some column
/// is nonzero at both rows.
Graph dual_graph(const Matrix& a);

/// Tree-depth of dual_graph(a).
int dual_tree_depth(const Matrix& a, const Guards& guards = {});
TreeDepthResult dual_tree_depth_witness(const Matrix& a, const Guards& guards = {});

/// Minimum of dual_tree_depth(t * a) over all invertible t.  Exhaustive over
/// the general linear group, so it is guarded to at most 3 rows over GF(2) or
/// GF(3).  Equals the ContractionStar depth of M(a).
int min_dual_tree_depth_row_equiv(const Matrix& a, const Guards& guards = {});

} // namespace mdepth
