#include "recolor/graph.hpp"

#include <algorithm>
#include <numeric>

namespace recolor {

ColoredGraph::ColoredGraph(int n, int r, std::vector<Edge> edge_list, std::vector<int> coloring)
    : n_(n), r_(r), edges_(std::move(edge_list)), coloring_(std::move(coloring)) {
    if (n_ < 0) throw ValidationError("vertex count must be nonnegative");
    if (r_ < 1) throw ValidationError("color count must be at least 1");
    if (static_cast<int>(coloring_.size()) != n_)
        throw ValidationError("coloring must assign exactly one color to each of the " +
                              std::to_string(n_) + " vertices");
    for (int v = 0; v < n_; ++v) {
        if (coloring_[v] < 0 || coloring_[v] >= r_)
            throw ValidationError("vertex " + std::to_string(v) + " has color " +
                                  std::to_string(coloring_[v]) + " outside 0.." + std::to_string(r_ - 1));
    }
    for (auto& [u, v] : edges_) {
        if (u > v) std::swap(u, v);
        if (u == v) throw ValidationError("self-loop at vertex " + std::to_string(u));
        if (u < 0 || v >= n_)
            throw ValidationError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                  ") has an endpoint outside 0.." + std::to_string(n_ - 1));
    }
    std::sort(edges_.begin(), edges_.end());
    auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end())
        throw ValidationError("duplicate edge (" + std::to_string(dup->first) + "," +
                              std::to_string(dup->second) + ")");
    adj_.assign(n_, {});
    for (auto [u, v] : edges_) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
}

bool ColoredGraph::adjacent(int u, int v) const {
    const auto& a = adj_[u];
    return std::binary_search(a.begin(), a.end(), v);
}

ColoredGraph ColoredGraph::with_coloring(std::vector<int> coloring) const {
    ColoredGraph g;
    g.n_ = n_;
    g.r_ = r_;
    g.edges_ = edges_;
    g.adj_ = adj_;
    g.coloring_ = std::move(coloring);
    if (static_cast<int>(g.coloring_.size()) != n_)
        throw ValidationError("replacement coloring has wrong size");
    for (int v = 0; v < n_; ++v) {
        if (g.coloring_[v] < 0 || g.coloring_[v] >= r_)
            throw ValidationError("replacement coloring has an out-of-range color at vertex " +
                                  std::to_string(v));
    }
    return g;
}

int GraphBuilder::add_vertex(int color) {
    colors_.push_back(color);
    return static_cast<int>(colors_.size()) - 1;
}

std::vector<int> GraphBuilder::add_vertices(int count, int color) {
    std::vector<int> ids;
    ids.reserve(count);
    for (int i = 0; i < count; ++i) ids.push_back(add_vertex(color));
    return ids;
}

void GraphBuilder::add_edge(int u, int v) {
    edges_.emplace_back(u, v);
}

ColoredGraph GraphBuilder::build() const {
    return ColoredGraph(static_cast<int>(colors_.size()), r_, edges_, colors_);
}

std::string to_string(const Move& move) {
    if (const auto* rec = std::get_if<RecolorMove>(&move))
        return "R " + std::to_string(rec->vertex) + " " + std::to_string(rec->to_color);
    const auto& sw = std::get<SwapMove>(move);
    return "S " + std::to_string(sw.a) + " " + std::to_string(sw.b);
}

std::vector<Edge> conflicts(const ColoredGraph& g) {
    std::vector<Edge> bad;
    for (const auto& [u, v] : g.edges())
        if (g.color(u) == g.color(v)) bad.emplace_back(u, v);
    return bad;
}

bool is_proper(const ColoredGraph& g) {
    for (const auto& [u, v] : g.edges())
        if (g.color(u) == g.color(v)) return false;
    return true;
}

ColoredGraph apply(const ColoredGraph& g, const Certificate& cert, bool adjacent_only) {
    bool has_recolor = false;
    bool has_swap = false;
    for (const Move& m : cert.moves) {
        if (std::holds_alternative<RecolorMove>(m))
            has_recolor = true;
        else
            has_swap = true;
    }
    if (has_recolor && has_swap)
        throw ValidationError("certificate mixes recoloring and swap moves");

    std::vector<int> colors = g.coloring();
    for (const Move& m : cert.moves) {
        if (const auto* rec = std::get_if<RecolorMove>(&m)) {
            if (rec->vertex < 0 || rec->vertex >= g.n())
                throw ValidationError("recoloring of nonexistent vertex " + std::to_string(rec->vertex));
            if (rec->to_color < 0 || rec->to_color >= g.r())
                throw ValidationError("recoloring to out-of-range color " + std::to_string(rec->to_color));
            if (colors[rec->vertex] == rec->to_color)
                throw ValidationError("recoloring of vertex " + std::to_string(rec->vertex) +
                                      " does not change its color");
            colors[rec->vertex] = rec->to_color;
        } else {
            const auto& sw = std::get<SwapMove>(m);
            if (sw.a < 0 || sw.a >= g.n() || sw.b < 0 || sw.b >= g.n())
                throw ValidationError("swap touches a nonexistent vertex");
            if (sw.a == sw.b)
                throw ValidationError("swap requires two distinct vertices");
            if (adjacent_only && !g.adjacent(sw.a, sw.b))
                throw AdjacencyViolation("swap (" + std::to_string(sw.a) + "," + std::to_string(sw.b) +
                                         ") is not along an edge");
            std::swap(colors[sw.a], colors[sw.b]);
        }
    }
    return g.with_coloring(std::move(colors));
}

namespace {

std::vector<int> component_ids(const ColoredGraph& g, int& count) {
    std::vector<int> comp(g.n(), -1);
    count = 0;
    std::vector<int> stack;
    for (int s = 0; s < g.n(); ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = count;
        stack.push_back(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : g.neighbors(v)) {
                if (comp[w] < 0) {
                    comp[w] = count;
                    stack.push_back(w);
                }
            }
        }
        ++count;
    }
    return comp;
}

// Backtracking k-colorability on one component given as local adjacency lists.
// Vertices with degree < k are peeled first; they can always be colored last.
bool component_colorable(const std::vector<std::vector<int>>& adj, int k) {
    int n = static_cast<int>(adj.size());
    std::vector<int> deg(n);
    std::vector<char> removed(n, 0);
    std::vector<int> queue;
    for (int v = 0; v < n; ++v) {
        deg[v] = static_cast<int>(adj[v].size());
        if (deg[v] < k) queue.push_back(v);
    }
    int removed_count = 0;
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        if (removed[v]) continue;
        removed[v] = 1;
        ++removed_count;
        for (int w : adj[v]) {
            if (!removed[w] && --deg[w] < k) queue.push_back(w);
        }
    }
    if (removed_count == n) return true;

    std::vector<int> core;
    std::vector<int> local(n, -1);
    for (int v = 0; v < n; ++v) {
        if (!removed[v]) {
            local[v] = static_cast<int>(core.size());
            core.push_back(v);
        }
    }
    int cn = static_cast<int>(core.size());
    std::vector<std::vector<int>> cadj(cn);
    for (int i = 0; i < cn; ++i)
        for (int w : adj[core[i]])
            if (local[w] >= 0) cadj[i].push_back(local[w]);

    std::vector<int> color(cn, -1);
    std::vector<std::vector<int>> sat(cn, std::vector<int>(k, 0));
    std::vector<int> satcount(cn, 0);

    // DSATUR-ordered backtracking; new colors introduced in order to break
    // color symmetry.
    auto pick = [&]() {
        int best = -1;
        for (int v = 0; v < cn; ++v) {
            if (color[v] >= 0) continue;
            if (best < 0 || satcount[v] > satcount[best] ||
                (satcount[v] == satcount[best] && cadj[v].size() > cadj[best].size()))
                best = v;
        }
        return best;
    };

    int max_used = -1;
    std::vector<std::tuple<int, int, int>> trail; // (vertex, color, prev max_used)

    struct Frame {
        int vertex;
        int next_color;
    };
    std::vector<Frame> frames;

    auto assign = [&](int v, int c) {
        color[v] = c;
        for (int w : cadj[v]) {
            if (sat[w][c]++ == 0) ++satcount[w];
        }
    };
    auto unassign = [&](int v, int c) {
        color[v] = -1;
        for (int w : cadj[v]) {
            if (--sat[w][c] == 0) --satcount[w];
        }
    };

    int assigned = 0;
    frames.push_back({pick(), 0});
    while (!frames.empty()) {
        Frame& f = frames.back();
        int v = f.vertex;
        int limit = std::min(k - 1, max_used + 1);
        int c = f.next_color;
        while (c <= limit && sat[v][c] > 0) ++c;
        if (c > limit) {
            frames.pop_back();
            if (!trail.empty()) {
                auto [pv, pc, pm] = trail.back();
                trail.pop_back();
                unassign(pv, pc);
                max_used = pm;
                --assigned;
            }
            continue;
        }
        f.next_color = c + 1;
        trail.emplace_back(v, c, max_used);
        assign(v, c);
        max_used = std::max(max_used, c);
        ++assigned;
        if (assigned == cn) return true;
        frames.push_back({pick(), 0});
    }
    return false;
}

} // namespace

bool colorable_with(const ColoredGraph& g, int num_colors) {
    if (num_colors < 0) return false;
    if (g.n() == 0) return true;
    if (num_colors == 0) return false;
    if (num_colors == 1) return g.m() == 0;
    if (num_colors == 2) return is_bipartite(g);
    int max_deg = 0;
    for (int v = 0; v < g.n(); ++v) max_deg = std::max(max_deg, g.degree(v));
    if (num_colors >= max_deg + 1) return true;

    int count = 0;
    std::vector<int> comp = component_ids(g, count);
    std::vector<std::vector<int>> members(count);
    for (int v = 0; v < g.n(); ++v) members[comp[v]].push_back(v);
    for (int c = 0; c < count; ++c) {
        const auto& verts = members[c];
        std::vector<int> local(g.n(), -1);
        for (int i = 0; i < static_cast<int>(verts.size()); ++i) local[verts[i]] = i;
        std::vector<std::vector<int>> adj(verts.size());
        for (int i = 0; i < static_cast<int>(verts.size()); ++i)
            for (int w : g.neighbors(verts[i])) adj[i].push_back(local[w]);
        if (!component_colorable(adj, num_colors)) return false;
    }
    return true;
}

namespace {

int greedy_clique_bound(const ColoredGraph& g) {
    int best = g.n() > 0 ? 1 : 0;
    std::vector<int> order(g.n());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return g.degree(a) > g.degree(b); });
    for (int seed : order) {
        if (g.degree(seed) + 1 <= best) break;
        std::vector<int> clique{seed};
        for (int w : g.neighbors(seed)) {
            bool ok = true;
            for (int c : clique)
                if (c != seed && !g.adjacent(w, c)) {
                    ok = false;
                    break;
                }
            if (ok) clique.push_back(w);
        }
        best = std::max(best, static_cast<int>(clique.size()));
    }
    return best;
}

int dsatur_greedy_bound(const ColoredGraph& g) {
    int n = g.n();
    if (n == 0) return 0;
    std::vector<int> color(n, -1);
    std::vector<std::vector<char>> sat(n, std::vector<char>(n + 1, 0));
    std::vector<int> satcount(n, 0);
    int used = 0;
    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 0; v < n; ++v) {
            if (color[v] >= 0) continue;
            if (best < 0 || satcount[v] > satcount[best] ||
                (satcount[v] == satcount[best] && g.degree(v) > g.degree(best)))
                best = v;
        }
        int c = 0;
        while (sat[best][c]) ++c;
        color[best] = c;
        used = std::max(used, c + 1);
        for (int w : g.neighbors(best)) {
            if (!sat[w][c]) {
                sat[w][c] = 1;
                ++satcount[w];
            }
        }
    }
    return used;
}

} // namespace

int chromatic_number(const ColoredGraph& g, int cap) {
    if (g.n() > cap)
        throw SearchCapExceeded("chromatic_number: " + std::to_string(g.n()) +
                                " vertices exceed the cap of " + std::to_string(cap));
    if (g.n() == 0) return 0;
    int lb = greedy_clique_bound(g);
    int ub = dsatur_greedy_bound(g);
    for (int k = lb; k < ub; ++k)
        if (colorable_with(g, k)) return k;
    return ub;
}

bool is_bipartite(const ColoredGraph& g) {
    std::vector<int> side(g.n(), -1);
    std::vector<int> stack;
    for (int s = 0; s < g.n(); ++s) {
        if (side[s] >= 0) continue;
        side[s] = 0;
        stack.push_back(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : g.neighbors(v)) {
                if (side[w] < 0) {
                    side[w] = 1 - side[v];
                    stack.push_back(w);
                } else if (side[w] == side[v]) {
                    return false;
                }
            }
        }
    }
    return true;
}

std::vector<int> color_class_sizes(const ColoredGraph& g) {
    std::vector<int> sizes(g.r(), 0);
    for (int v = 0; v < g.n(); ++v) ++sizes[g.color(v)];
    return sizes;
}

bool planarity_bound_check(const ColoredGraph& g) {
    long n = g.n();
    long m = g.m();
    if (n < 3) return true;
    if (m > 3 * n - 6) return false;
    if (is_bipartite(g) && m > 2 * n - 4) return false;
    return true;
}

} // namespace recolor
