#pragma once

#include <random>
#include <vector>

#include "recolor/graph.hpp"
#include "recolor/solver.hpp"

namespace testutil {

using recolor::ColoredGraph;
using recolor::Edge;

inline ColoredGraph random_graph(std::mt19937_64& rng, int n, int r, int edge_percent) {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng() % 100 < static_cast<unsigned>(edge_percent)) edges.emplace_back(u, v);
    std::vector<int> colors(n);
    for (int v = 0; v < n; ++v) colors[v] = static_cast<int>(rng() % r);
    return ColoredGraph(n, r, std::move(edges), std::move(colors));
}

// full enumeration of proper colorings; independent of the library's search
template <typename Fn>
void for_each_proper_coloring(const ColoredGraph& g, Fn&& fn) {
    const int n = g.n();
    const int r = g.r();
    std::vector<int> colors(n, 0);
    long total = 1;
    for (int i = 0; i < n; ++i) total *= r;
    for (long code = 0; code < total; ++code) {
        long rest = code;
        for (int v = 0; v < n; ++v) {
            colors[v] = static_cast<int>(rest % r);
            rest /= r;
        }
        bool proper = true;
        for (const auto& [u, v] : g.edges())
            if (colors[u] == colors[v]) {
                proper = false;
                break;
            }
        if (proper) fn(colors);
    }
}

// exhaustive minimum Hamming distance to a proper coloring, or -1 if none
inline int enumeration_fix_optimum(const ColoredGraph& g) {
    int best = -1;
    for_each_proper_coloring(g, [&](const std::vector<int>& colors) {
        int dist = 0;
        for (int v = 0; v < g.n(); ++v) dist += colors[v] != g.color(v);
        if (best < 0 || dist < best) best = dist;
    });
    return best;
}

} // namespace testutil
