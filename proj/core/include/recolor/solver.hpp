#pragma once

#include <optional>
#include <string>
#include <vector>

#include "recolor/graph.hpp"

namespace recolor {

enum class Variant { fix, swap };

std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);

/// A repair problem: graph + coloring, a move budget, and the move semantics.
struct RepairInstance {
    ColoredGraph graph;
    int budget = 0;
    Variant variant = Variant::fix;
    bool promise = false;
    bool adjacent_only = false;

    void validate() const;
};

/// Finite move count or an explicit unreachable marker.
class MoveCount {
public:
    static MoveCount finite(int value) { return MoveCount(value); }
    static MoveCount unreachable() { return MoveCount(); }

    bool is_unreachable() const { return !value_.has_value(); }
    int value() const;

    friend bool operator==(const MoveCount&, const MoveCount&) = default;

private:
    MoveCount() = default;
    explicit MoveCount(int v) : value_(v) {}
    std::optional<int> value_;
};

std::string to_string(const MoveCount& c);

struct SolveResult {
    bool decision = false;
    std::optional<MoveCount> optimum;        // engaged only when computed exactly
    std::optional<Certificate> certificate;  // replays to a proper coloring
};

struct SearchLimits {
    int chromatic_cap = kDefaultChromaticCap;
    int enumeration_cap = 24;     // optimum solvers that enumerate proper colorings
    long state_cap = 5'000'000;   // breadth-first search over coloring states
};

/// Minimum number of recolorings reaching a proper coloring (the Hamming
/// distance to the nearest proper coloring); unreachable iff the structure is
/// not r-colorable. Computed by iterative deepening on the conflict branching.
SolveResult fix_optimum(const ColoredGraph& g, const SearchLimits& limits = {});

/// Budget-k decision by depth-bounded branching: take the lexicographically
/// smallest conflict edge and recolor either endpoint to each other color.
SolveResult fix_branch(const ColoredGraph& g, int budget);

/// Directed multigraph on colors with one arc (current -> target) per
/// mismatched vertex. Balanced whenever both colorings share a multiset.
class ExchangeDigraph {
public:
    static ExchangeDigraph between(const std::vector<int>& current,
                                   const std::vector<int>& target, int r);

    int r() const { return r_; }
    int count(int from, int to) const { return counts_[from * r_ + to]; }
    int mismatches() const;

    struct Decomposition {
        int cycle_count = 0;
        // each cycle is a color sequence c0 -> c1 -> ... -> c0
        std::vector<std::vector<int>> cycles;
    };

    /// Maximum number of directed simple cycles the arc multiset decomposes
    /// into, by exhaustive search over cycle-type counts.
    Decomposition max_cycle_decomposition() const;

private:
    int r_ = 0;
    std::vector<int> counts_;
};

/// Minimum swaps transforming g's coloring into target: mismatches minus the
/// maximum cycle decomposition of the exchange digraph.
int swap_distance_to(const ColoredGraph& g, const std::vector<int>& target);

/// Transpositions realizing swap_distance_to(g, target).
Certificate swap_moves_to(const ColoredGraph& g, const std::vector<int>& target);

/// Minimum swaps reaching any proper coloring (over proper colorings sharing
/// the input multiset); unreachable when no such coloring exists.
SolveResult swap_optimum(const ColoredGraph& g, const SearchLimits& limits = {});

/// Minimum swaps when every swap must be along an edge; breadth-first search
/// over coloring states.
SolveResult adjacent_swap_optimum(const ColoredGraph& g, const SearchLimits& limits = {});

/// State-space breadth-first search usable as an independent oracle for any
/// variant; moves are single recolorings, unrestricted swaps, or edge swaps.
SolveResult state_bfs_optimum(const ColoredGraph& g, Variant variant,
                              bool adjacent_only = false, const SearchLimits& limits = {});

/// Exact swap distances from g's coloring to every coloring in its reachable
/// class, as (packed state, distance) pairs. Packing is base-r, vertex 0 least
/// significant.
std::vector<std::pair<unsigned long long, int>> swap_distance_map(const ColoredGraph& g,
                                                                  const SearchLimits& limits = {});

unsigned long long pack_coloring(const std::vector<int>& coloring, int r);

struct PromiseDiagnosis {
    bool holds = false;
    bool chromatic_matches = false;   // chi(G) == r
    bool class_sizes_realizable = false; // some proper coloring matches the multiset
    int chromatic = 0;

    std::string describe() const;
};

/// Checks the promise: chi(G) = r and the coloring is a permutation of some
/// proper coloring (equal class sizes).
PromiseDiagnosis promise_check(const RepairInstance& inst, const SearchLimits& limits = {});

/// True iff some proper coloring has exactly the given per-color class sizes.
bool exists_proper_with_class_sizes(const ColoredGraph& g, const std::vector<int>& sizes);

struct SwapSearchOptions {
    // Consider only swaps touching a conflict vertex or a neighbor of one.
    bool restrict_to_conflict_region = true;
    // Collapse structurally interchangeable swap partners (equal neighborhood
    // and color) to one representative.
    bool collapse_twins = true;
    // Allow swaps along edges only.
    bool adjacent_only = false;
    long node_limit = -1; // < 0: unlimited
};

/// Budget-bounded decision for the swap variant by pruned depth-first search
/// over swap sequences. With restriction off this is exhaustive; the
/// restricted form is validated against the state BFS oracle at small sizes.
SolveResult swap_search(const ColoredGraph& g, int budget, const SwapSearchOptions& opts = {});

/// Instance-level entry point: picks the matching exact solver and answers the
/// budget question. decision == (optimum <= budget).
SolveResult solve(const RepairInstance& inst, const SearchLimits& limits = {});

} // namespace recolor
