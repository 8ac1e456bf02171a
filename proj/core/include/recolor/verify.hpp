#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "recolor/reductions.hpp"

namespace recolor {

// ---------------------------------------------------------------------------
// brute-force source oracles

/// Backtracking decision for precoloring extension. Exact; throws
/// SearchCapExceeded past the cap.
bool oracle_prext(const PrExtInstance& src, int cap = 20);

bool oracle_indset(const IndSetInstance& src, int cap = 20);

/// Lexicographically smallest independent set of size k, if any.
std::optional<std::vector<int>> indset_witness(const IndSetInstance& src, int cap = 20);

bool oracle_3sat(const Cnf3Formula& formula, int cap = 20);

/// Lexicographically smallest satisfying assignment (bit i = variable i+1).
std::optional<std::vector<bool>> sat_witness(const Cnf3Formula& formula, int cap = 20);

// ---------------------------------------------------------------------------
// constructive certificate replays

/// The 2k-swap repair dictated by an independent set witness: pull color 0
/// into each conflict triangle from a witness vertex, then rotate that
/// vertex's triangle gadget. Verifies the result is proper.
Certificate replay_indset_certificate(const IndSetInstance& src, const std::vector<int>& witness,
                                      const ReductionOutput& target);

/// The recoloring repair dictated by a satisfying assignment of formula
/// sat_index: propagate the root conflict down the spread tree to that
/// formula's leaf, flip the variables the assignment flips, and repair each
/// clause gadget locally. Verifies properness and the budget bound.
Certificate replay_crosscompose_certificate(const Cnf3Batch& batch, int sat_index,
                                            const std::vector<bool>& assignment,
                                            const ReductionOutput& target);

// ---------------------------------------------------------------------------
// clause gadget properties

struct GadgetPropertyReport {
    bool p1_holds = false; // all-0 boundary forces the guard vertex to color 0
    bool p2_holds = false; // any boundary with a color-1 vertex admits guard != 0
    int boundaries_checked = 0;
    int p2_boundaries = 0;
    int unclaimed_boundaries = 0; // color-2 neighbors only; recorded, nothing asserted

    bool passed() const { return p1_holds && p2_holds; }
};

/// Exhausts all proper 3-colorings of one isolated clause gadget under every
/// boundary condition on the four attached variable vertices.
GadgetPropertyReport verify_gadget_p1_p2();

// ---------------------------------------------------------------------------
// equivalence sweeps

enum class SweepFamily {
    prext_fix,
    prext_swap,
    indset_3swap,
    planar_swap_promise,
    planar_fix_promise,
    cross_compose,
    promise_augment,
    gadget_p1p2,
};

std::string to_string(SweepFamily family);
SweepFamily sweep_family_from_string(const std::string& name);

struct SweepOptions {
    int max_n = 4;
    int max_k = 2;
    // NO-direction bounded searches run only when the emitted budget is at
    // most this; larger budgets are recorded as skipped.
    int search_budget_cap = 4;
    // 0 = exhaustive enumeration; otherwise the number of seeded random
    // sources to draw.
    int sample = 0;
    std::uint64_t seed = 1;
    bool record_all = false; // keep every per-instance record, not just failures
    SearchLimits limits;
};

struct EquivalenceRecord {
    std::string source;
    bool source_yes = false;
    bool target_yes = false;
    bool agree = false;
    std::string note;
    double millis = 0.0;
};

struct EquivalenceReport {
    std::string family;
    SweepOptions options;
    int instances = 0;
    int disagreements = 0;
    int skipped = 0;
    std::vector<EquivalenceRecord> records;

    bool passed() const { return disagreements == 0; }
};

/// Enumerates (or samples) sources for the family, compares the source oracle
/// against the target-side solver, and folds in the family's structural
/// checks. Fails iff any record disagrees.
EquivalenceReport run_sweep(SweepFamily family, const SweepOptions& options = {});

std::string summarize(const EquivalenceReport& report);

} // namespace recolor
