#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "recolor/errors.hpp"

namespace recolor {

using Edge = std::pair<int, int>;

/// Undirected simple graph with a total vertex coloring over colors 0..r-1.
/// Immutable after construction; all operations on it are pure.
class ColoredGraph {
public:
    ColoredGraph() = default;
    ColoredGraph(int n, int r, std::vector<Edge> edge_list, std::vector<int> coloring);

    int n() const { return n_; }
    int r() const { return r_; }
    int m() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& coloring() const { return coloring_; }
    int color(int v) const { return coloring_[v]; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    bool adjacent(int u, int v) const;

    /// Same structure, different coloring.
    ColoredGraph with_coloring(std::vector<int> coloring) const;

private:
    int n_ = 0;
    int r_ = 1;
    std::vector<Edge> edges_;    // normalized u < v, sorted lexicographically
    std::vector<int> coloring_;  // size n, values in 0..r-1
    std::vector<std::vector<int>> adj_;
};

/// Incremental construction helper for gadget emitters and tests.
class GraphBuilder {
public:
    explicit GraphBuilder(int r) : r_(r) {}

    int add_vertex(int color);
    std::vector<int> add_vertices(int count, int color);
    void add_edge(int u, int v);
    int size() const { return static_cast<int>(colors_.size()); }
    int color(int v) const { return colors_[v]; }
    ColoredGraph build() const;

private:
    int r_;
    std::vector<Edge> edges_;
    std::vector<int> colors_;
};

struct RecolorMove {
    int vertex;
    int to_color;
};

struct SwapMove {
    int a;
    int b;
};

using Move = std::variant<RecolorMove, SwapMove>;

/// Ordered list of repair moves. Moves within one certificate are homogeneous:
/// all recolorings or all swaps.
struct Certificate {
    std::vector<Move> moves;

    bool empty() const { return moves.empty(); }
    int size() const { return static_cast<int>(moves.size()); }
};

std::string to_string(const Move& move);

/// The monochromatic edges of g, sorted; empty iff the coloring is proper.
std::vector<Edge> conflicts(const ColoredGraph& g);

bool is_proper(const ColoredGraph& g);

/// Executes moves in order and returns the resulting coloring on the same
/// structure. Recolorings must change the vertex color; swap pairs must be
/// edges when adjacent_only is asserted.
ColoredGraph apply(const ColoredGraph& g, const Certificate& cert, bool adjacent_only = false);

/// True iff the structure admits a proper coloring with num_colors colors.
/// Ignores the current coloring.
bool colorable_with(const ColoredGraph& g, int num_colors);

inline constexpr int kDefaultChromaticCap = 60;

/// Exact chromatic number via clique lower bound + DSATUR-ordered
/// branch-and-bound, component by component.
int chromatic_number(const ColoredGraph& g, int cap = kDefaultChromaticCap);

bool is_bipartite(const ColoredGraph& g);

/// Per-color vertex counts, size r.
std::vector<int> color_class_sizes(const ColoredGraph& g);

/// Euler-formula necessary condition for planarity: m <= 3n-6, and
/// m <= 2n-4 when the graph is bipartite (n >= 3). Not a planarity test.
bool planarity_bound_check(const ColoredGraph& g);

} // namespace recolor
