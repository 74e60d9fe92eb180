#pragma once

#include "mdepth/errors.hpp"

namespace mdepth {

/// Size guards for the exponential-cost routines.  Each field can be raised up
/// to its hard ceiling; requests beyond a guard raise GuardError naming the
/// bound instead of starting a computation that cannot finish.
struct Guards {
    /// Ground-set bound for the depth recursions.
    int max_elements = 12;
    /// Bound on the number of candidate vectors per recursion step.
    long max_candidates = 10000;
    /// Vertex bound for exact tree-depth.
    int max_td_vertices = 18;
    /// Column bound for exhaustive canonical-key minimization; beyond it a
    /// weaker (still collision-sound) key is used.
    int max_canonical_cols = 12;
    /// Node budget for the canonical-key search before falling back.
    long canonical_node_budget = 200000;
    /// Ground-set bound for circuit/component enumeration.
    int max_circuit_elements = 20;

    static constexpr int kElementCeiling = 20;
    static constexpr long kCandidateCeiling = 100000;
    static constexpr int kTdVertexCeiling = 18;

    /// Copy with every bound clamped to its hard ceiling.
    Guards clamped() const {
        Guards g = *this;
        if (g.max_elements > kElementCeiling) g.max_elements = kElementCeiling;
        if (g.max_candidates > kCandidateCeiling) g.max_candidates = kCandidateCeiling;
        if (g.max_td_vertices > kTdVertexCeiling) g.max_td_vertices = kTdVertexCeiling;
        if (g.max_circuit_elements > kElementCeiling) g.max_circuit_elements = kElementCeiling;
        return g;
    }
};

} // namespace mdepth
