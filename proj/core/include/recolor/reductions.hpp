#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "recolor/graph.hpp"
#include "recolor/solver.hpp"

namespace recolor {

/// Precoloring extension source: an uncolored graph with a partial coloring on
/// the precolored set W. precoloring[v] == kUncolored marks v outside W.
struct PrExtInstance {
    static constexpr int kUncolored = -1;

    int n = 0;
    std::vector<Edge> edges;
    int r = 3;
    std::vector<int> precoloring; // size n; kUncolored or 0..r-1

    std::vector<int> precolored_set() const;
    int uncolored_count() const;

    /// Rejects malformed instances, including improper precolorings
    /// (adjacent precolored vertices sharing a color).
    void validate() const;
};

struct IndSetInstance {
    int n = 0;
    std::vector<Edge> edges;
    int k = 1;

    void validate() const;
};

using Clause = std::vector<int>; // nonzero literals, |lit| in 1..num_vars

struct Cnf3Formula {
    int num_vars = 0;
    std::vector<Clause> clauses;

    void validate() const;
};

/// t formulas over the same variable and clause counts; t a power of two.
struct Cnf3Batch {
    std::vector<Cnf3Formula> formulas;

    int t() const { return static_cast<int>(formulas.size()); }
    void validate() const;
};

/// Attribution of emitted vertices to source objects. Every vertex of a
/// generator's output appears in exactly one record.
struct ReductionTrace {
    std::vector<std::pair<std::string, std::vector<int>>> records;

    void add(std::string label, std::vector<int> ids);
    const std::vector<int>& ids(const std::string& label) const;
    bool has(const std::string& label) const;
    /// Labels matching a prefix, in insertion order.
    std::vector<std::string> labels_with_prefix(const std::string& prefix) const;
};

/// Throws unless every vertex 0..n-1 appears in exactly one trace record.
void check_trace_covers(const ReductionTrace& trace, int n);

struct ReductionOutput {
    RepairInstance instance;
    ReductionTrace trace;
};

// Each generator is deterministic (fixed vertex numbering), asserts its
// closed-form output size, and emits the budget dictated by the construction.

/// Precoloring extension -> fix: budget k' = |V \ W|; every precolored vertex
/// is locked by (r-1)(k'+1) pendants, k'+1 per foreign color; uncolored
/// vertices start at color 0.
ReductionOutput prext_to_fix(const PrExtInstance& src);

/// Same construction for the swap variant: adds r*k' isolated vertices, k' of
/// each color, so every uncolored vertex can import any color.
ReductionOutput prext_to_swap(const PrExtInstance& src);

/// Independent set -> 3-swap with budget 2k: k conflict triangles, a
/// pendant-locked triangle gadget per source vertex, and k+1 decoy triangles
/// per source vertex.
ReductionOutput indset_to_3swap(const IndSetInstance& src);

/// Adds a disjoint properly colored clique on r_new vertices and raises the
/// color count. Answer-preserving. Throws InvalidTarget if r_new <= current r.
RepairInstance lift_to_r(const RepairInstance& inst, int r_new);
ReductionOutput lift_to_r(const ReductionOutput& out, int r_new);

/// Enforces the promise on an indset_to_3swap output: one subdivided star per
/// source vertex (center color 0, spokes 1, tips 2) plus a properly colored
/// clique. Budget unchanged.
ReductionOutput promise_augment(const ReductionOutput& from_indset, int n_src, int k_src);

/// Reads n_src and k_src back from an indset_to_3swap trace.
std::pair<int, int> indset_trace_params(const ReductionTrace& trace);

/// Batch of 3-SAT formulas -> one fix instance with budget
/// k = 2*log2(t) + 2n + 9m: per-formula variable 2-cliques, clause gadgets
/// with guard pendants, a pendant-locked selector per formula, and a binary
/// spread tree of triangles choosing which formula to satisfy.
/// r_target >= 4 additionally pins every base vertex to colors {0,1,2} with
/// (r_target-3)*(k+1) pendants per vertex.
ReductionOutput cross_compose(const Cnf3Batch& batch, int r_target = 3);

/// Bipartite planar precoloring extension (every precolored vertex of degree
/// 1) -> 3-swap promise instance with budget h = |V \ W|. Companion pendants
/// supply the two foreign colors to each uncolored vertex; pendant fans lock
/// every precolored vertex; a final triangle pins the chromatic number at 3.
ReductionOutput prext_to_planar_swap_promise(const PrExtInstance& src);

/// Same construction for the fix variant: each uncolored vertex's two
/// companions become a detached 2-clique (edges x-x1, x-x2 replaced by x1-x2).
ReductionOutput prext_to_planar_fix_promise(const PrExtInstance& src);

/// Removes the chromatic-number triangle (the sole odd cycle) from a planar
/// promise output, clearing the promise flag; the result is bipartite and the
/// decision is preserved.
ReductionOutput strip_promise_bipartite(const ReductionOutput& out);

namespace gadget {

/// Frozen initial colors for one clause gadget, keyed by the polarity pattern
/// of its three literal slots (bit i set = literal i negated). Order:
/// a, b, c, d, y1, y2, y3, y4, y5, r. Chosen as the lexicographically smallest
/// assignment that keeps the gadget initially proper next to all-true
/// variables; re-derived and checked by tests.
const std::array<int, 10>& clause_initial_colors(int polarity_pattern);

} // namespace gadget

} // namespace recolor
