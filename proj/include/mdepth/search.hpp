#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mdepth/depth.hpp"
#include "mdepth/guards.hpp"
#include "mdepth/matroid.hpp"

namespace mdepth {

/// One-line report renderings: "p=2 2x3 [101;011]" and "(1,0,1)".
std::string matroid_brief(const RepMatroid& m);
std::string vec_brief(const Vec& v);

/// Hard ceiling on the number of echelon forms an enumeration window may
/// contain; larger windows are refused.
inline constexpr long kEnumerationBudget = 1'000'000;

/// Enumeration window: every matroid over the field presentable by a matrix
/// with at most max_rows rows and 1..max_cols columns.  The walk generates
/// reduced echelon forms directly (pivot column set, then free entries), so
/// each matroid of the window appears once per echelon presentation; with
/// dedupe on, canonical keys collapse column relabelings and exactly one
/// representative per key survives.
struct EnumerationSpec {
    Field field;
    int max_rows = 3;
    int max_cols = 5;
    bool dedupe = true;
};

/// Number of echelon forms in the window, saturated at kEnumerationBudget + 1.
long enumeration_size(const EnumerationSpec& spec);

/// Visits the window in a fixed order: column count ascending, rank
/// ascending, pivot sets lexicographic, free entries lexicographic.
void enumerate_canonical(const EnumerationSpec& spec,
                         const std::function<void(const RepMatroid&)>& visit,
                         const Guards& guards = {});
std::vector<RepMatroid> enumerate_canonical(const EnumerationSpec& spec,
                                            const Guards& guards = {});

/// A matroid whose parameter value is d and strictly drops under every
/// single-element move: deletion for the contraction-side parameters
/// (Contraction, ContractionStar), contraction for the deletion-side ones
/// (Deletion, DeletionStar).
struct ObstructionWitness {
    RepMatroid matroid;
    int value = 0;
    /// Parameter value after the move, parallel to matroid.labels().
    std::vector<int> move_values;
    /// Contraction depth only: whether deleting every non-empty label subset
    /// also drops the value.  Checked directly up to 5 elements; for
    /// ContractionStar the subset form follows from restriction monotonicity
    /// and is not re-checked.
    bool set_checked = false;
    bool set_minimal = false;
};

struct ObstructionReport {
    DepthParam param = DepthParam::ContractionStar;
    int depth = 0;
    EnumerationSpec window;
    std::vector<ObstructionWitness> witnesses;
    int max_witness_size = 0;
    std::string to_text() const;
};

/// Filters the window for value == d and strict decrease under every
/// applicable single-element move.
ObstructionReport find_obstructions(DepthParam param, int d, const EnumerationSpec& window,
                                    const Guards& guards = {});

/// Vectors whose contraction lowers the ContractionStar depth, and the
/// deletion-minimal restrictions that preserve it.
struct ProgressiveReport {
    std::string instance;
    int value = 0;
    /// Projective representatives v with a strictly smaller depth after
    /// contract_vector, in lexicographic order.
    std::vector<Vec> vectors;
    struct Restriction {
        LabelSet elements;
        /// Every progressive vector lies in the span of the original columns
        /// carrying these labels.
        bool spans_all = false;
    };
    /// Restrictions keeping the full depth whose every single deletion drops
    /// it, ordered by (size, labels).  Monotonicity makes these exactly the
    /// subset-minimal depth-preserving restrictions.
    std::vector<Restriction> restrictions;
    std::string to_text() const;
};

ProgressiveReport progressive_vectors(const RepMatroid& m, const Guards& guards = {});

/// One exhaustive property family over an enumeration window.
struct SuiteConfig {
    Field field;
    int max_rows = 3;
    int max_cols = 4;
    int workers = 1;
    Guards guards{};
};

struct SuiteReport {
    std::string name;
    long instances = 0;
    std::vector<std::string> lines;           // one entry per instance checked
    std::vector<std::string> counterexamples; // verbatim failures
    bool passed() const { return counterexamples.empty(); }
    std::string to_text() const;
};

/// Registered suite names, in documentation order.
const std::vector<std::string>& suite_names();

/// Runs one named suite over the window; throws InputError for unknown
/// names.  Reports are byte-identical for every worker count.
SuiteReport run_suite(const std::string& name, const SuiteConfig& config);

} // namespace mdepth
