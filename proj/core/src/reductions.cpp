#include "recolor/reductions.hpp"

#include <algorithm>
#include <numeric>

namespace recolor {

// ---------------------------------------------------------------------------
// source instances

std::vector<int> PrExtInstance::precolored_set() const {
    std::vector<int> w;
    for (int v = 0; v < n; ++v)
        if (precoloring[v] != kUncolored) w.push_back(v);
    return w;
}

int PrExtInstance::uncolored_count() const {
    int count = 0;
    for (int v = 0; v < n; ++v)
        if (precoloring[v] == kUncolored) ++count;
    return count;
}

void PrExtInstance::validate() const {
    if (r < 1) throw ValidationError("precoloring extension needs at least one color");
    if (static_cast<int>(precoloring.size()) != n)
        throw ValidationError("precoloring must have one entry per vertex");
    for (int v = 0; v < n; ++v) {
        int c = precoloring[v];
        if (c != kUncolored && (c < 0 || c >= r))
            throw ValidationError("precolored vertex " + std::to_string(v) +
                                  " has color outside 0..r-1");
    }
    // structure checks via a throwaway all-zero coloring
    ColoredGraph(n, r, edges, std::vector<int>(n, 0));
    for (const auto& [u, v] : edges) {
        if (precoloring[u] != kUncolored && precoloring[u] == precoloring[v])
            throw ValidationError("improper precoloring: adjacent precolored vertices " +
                                  std::to_string(u) + " and " + std::to_string(v) +
                                  " share a color");
    }
}

void IndSetInstance::validate() const {
    ColoredGraph(n, 1, edges, std::vector<int>(n, 0));
    if (k < 0 || k > n)
        throw ValidationError("independent set target must lie in 0..n");
}

void Cnf3Formula::validate() const {
    if (num_vars < 1) throw ValidationError("formula needs at least one variable");
    if (clauses.empty()) throw ValidationError("formula needs at least one clause");
    for (const auto& clause : clauses) {
        if (clause.empty() || clause.size() > 3)
            throw ValidationError("clauses must have 1..3 literals");
        for (int lit : clause) {
            if (lit == 0 || std::abs(lit) > num_vars)
                throw ValidationError("literal " + std::to_string(lit) + " out of range");
        }
    }
}

void Cnf3Batch::validate() const {
    int count = t();
    if (count < 1) throw BatchShapeMismatch("batch must contain at least one formula");
    if ((count & (count - 1)) != 0)
        throw BatchShapeMismatch("batch size must be a power of two, got " + std::to_string(count));
    for (const auto& f : formulas) f.validate();
    for (const auto& f : formulas) {
        if (f.num_vars != formulas[0].num_vars || f.clauses.size() != formulas[0].clauses.size())
            throw BatchShapeMismatch("formulas must share variable and clause counts");
    }
}

// ---------------------------------------------------------------------------
// trace

void ReductionTrace::add(std::string label, std::vector<int> ids) {
    records.emplace_back(std::move(label), std::move(ids));
}

const std::vector<int>& ReductionTrace::ids(const std::string& label) const {
    for (const auto& [name, ids] : records)
        if (name == label) return ids;
    throw ValidationError("trace has no record labelled '" + label + "'");
}

bool ReductionTrace::has(const std::string& label) const {
    for (const auto& [name, ids] : records)
        if (name == label) return true;
    return false;
}

std::vector<std::string> ReductionTrace::labels_with_prefix(const std::string& prefix) const {
    std::vector<std::string> out;
    for (const auto& [name, ids] : records)
        if (name.rfind(prefix, 0) == 0) out.push_back(name);
    return out;
}

void check_trace_covers(const ReductionTrace& trace, int n) {
    std::vector<int> hits(n, 0);
    for (const auto& [name, ids] : trace.records) {
        for (int v : ids) {
            if (v < 0 || v >= n)
                throw ValidationError("trace record '" + name + "' names nonexistent vertex " +
                                      std::to_string(v));
            ++hits[v];
        }
    }
    for (int v = 0; v < n; ++v) {
        if (hits[v] != 1)
            throw ValidationError("vertex " + std::to_string(v) + " appears in " +
                                  std::to_string(hits[v]) + " trace records");
    }
}

namespace {

void assert_size(const GraphBuilder& b, int expected, const char* generator) {
    if (b.size() != expected)
        throw Error(std::string(generator) + ": emitted " + std::to_string(b.size()) +
                    " vertices, size formula gives " + std::to_string(expected));
}

std::string tag(const std::string& base, int i) {
    return base + "(" + std::to_string(i) + ")";
}

std::string tag2(const std::string& base, int a, int b) {
    return base + "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

} // namespace

// ---------------------------------------------------------------------------
// precoloring extension -> fix / swap

namespace {

ReductionOutput prext_to_fix_impl(const PrExtInstance& src, bool swap_variant) {
    src.validate();
    const auto w_set = src.precolored_set();
    const int budget = src.uncolored_count();

    GraphBuilder b(src.r);
    ReductionTrace trace;
    std::vector<int> source_ids;
    for (int v = 0; v < src.n; ++v) {
        int c = src.precoloring[v];
        source_ids.push_back(b.add_vertex(c == PrExtInstance::kUncolored ? 0 : c));
    }
    trace.add("source", source_ids);
    for (const auto& [u, v] : src.edges) b.add_edge(u, v);

    for (int w : w_set) {
        std::vector<int> pendants;
        for (int c = 0; c < src.r; ++c) {
            if (c == src.precoloring[w]) continue;
            for (int i = 0; i <= budget; ++i) {
                int p = b.add_vertex(c);
                b.add_edge(w, p);
                pendants.push_back(p);
            }
        }
        trace.add(tag("lock_pendants", w), std::move(pendants));
    }

    if (swap_variant) {
        for (int c = 0; c < src.r; ++c) {
            std::vector<int> ids = b.add_vertices(budget, c);
            if (!ids.empty()) trace.add(tag("free_color", c), std::move(ids));
        }
    }

    int expected = src.n + static_cast<int>(w_set.size()) * (src.r - 1) * (budget + 1) +
                   (swap_variant ? src.r * budget : 0);
    assert_size(b, expected, swap_variant ? "prext_to_swap" : "prext_to_fix");

    ReductionOutput out;
    out.instance.graph = b.build();
    out.instance.budget = budget;
    out.instance.variant = swap_variant ? Variant::swap : Variant::fix;
    out.trace = std::move(trace);
    check_trace_covers(out.trace, out.instance.graph.n());
    return out;
}

} // namespace

ReductionOutput prext_to_fix(const PrExtInstance& src) {
    return prext_to_fix_impl(src, false);
}

ReductionOutput prext_to_swap(const PrExtInstance& src) {
    return prext_to_fix_impl(src, true);
}

// ---------------------------------------------------------------------------
// independent set -> 3-swap

ReductionOutput indset_to_3swap(const IndSetInstance& src) {
    src.validate();
    if (src.k < 1) throw ValidationError("independent set target must be at least 1");
    const int n = src.n;
    const int k = src.k;

    GraphBuilder b(3);
    ReductionTrace trace;

    std::vector<int> source_ids = b.add_vertices(n, 0);
    trace.add("source", source_ids);

    // k initially conflicting triangles; resolving each needs a color-0 import
    for (int j = 0; j < k; ++j) {
        int a = b.add_vertex(2);
        int bb = b.add_vertex(1);
        int c = b.add_vertex(1);
        b.add_edge(a, bb);
        b.add_edge(a, c);
        b.add_edge(bb, c);
        trace.add(tag("conflict_triangle", j), {a, bb, c});
    }

    for (int i = 0; i < n; ++i) {
        int ua = b.add_vertex(0);
        int ub = b.add_vertex(1);
        int uc = b.add_vertex(2);
        b.add_edge(ua, ub);
        b.add_edge(ua, uc);
        b.add_edge(ub, uc);
        b.add_edge(source_ids[i], ub);
        trace.add(tag("vertex_triangle", i), {ua, ub, uc});

        std::vector<int> pendants;
        for (int c = 1; c <= 2; ++c)
            for (int p = 0; p <= k; ++p) {
                int id = b.add_vertex(c);
                b.add_edge(ua, id);
                pendants.push_back(id);
            }
        trace.add(tag("vertex_pendants", i), std::move(pendants));

        // adjacency of the source is encoded on the third triangle vertex
        for (const auto& [x, y] : src.edges) {
            if (x == i && y > i) b.add_edge(source_ids[y], uc);
            if (y == i && x > i) b.add_edge(source_ids[x], uc);
        }

        for (int j = 0; j <= k; ++j) {
            int ta = b.add_vertex(2);
            int tb = b.add_vertex(1);
            int tc = b.add_vertex(0);
            b.add_edge(ta, tb);
            b.add_edge(ta, tc);
            b.add_edge(tb, tc);
            b.add_edge(source_ids[i], ta);
            trace.add(tag2("decoy_triangle", i, j), {ta, tb, tc});
        }
    }

    assert_size(b, n + 3 * k + n * (3 + 2 * (k + 1) + 3 * (k + 1)), "indset_to_3swap");

    ReductionOutput out;
    out.instance.graph = b.build();
    out.instance.budget = 2 * k;
    out.instance.variant = Variant::swap;
    out.trace = std::move(trace);
    check_trace_covers(out.trace, out.instance.graph.n());
    return out;
}

// ---------------------------------------------------------------------------
// clique lift

RepairInstance lift_to_r(const RepairInstance& inst, int r_new) {
    if (r_new < 3 || r_new <= inst.graph.r())
        throw InvalidTarget("lift target must be at least 3 and exceed the current color count");
    const auto& g = inst.graph;
    std::vector<Edge> edges = g.edges();
    std::vector<int> colors = g.coloring();
    int base = g.n();
    for (int c = 0; c < r_new; ++c) {
        colors.push_back(c);
        for (int c2 = 0; c2 < c; ++c2) edges.emplace_back(base + c2, base + c);
    }
    RepairInstance out = inst;
    out.graph = ColoredGraph(base + r_new, r_new, std::move(edges), std::move(colors));
    return out;
}

ReductionOutput lift_to_r(const ReductionOutput& out, int r_new) {
    ReductionOutput lifted;
    lifted.instance = lift_to_r(out.instance, r_new);
    lifted.trace = out.trace;
    std::vector<int> clique;
    for (int v = out.instance.graph.n(); v < lifted.instance.graph.n(); ++v) clique.push_back(v);
    lifted.trace.add(tag("lift_clique", r_new), std::move(clique));
    check_trace_covers(lifted.trace, lifted.instance.graph.n());
    return lifted;
}

// ---------------------------------------------------------------------------
// promise augmentation for indset outputs

std::pair<int, int> indset_trace_params(const ReductionTrace& trace) {
    if (!trace.has("source"))
        throw ValidationError("trace lacks a source record");
    int n_src = static_cast<int>(trace.ids("source").size());
    int k_src = static_cast<int>(trace.labels_with_prefix("conflict_triangle(").size());
    if (k_src == 0)
        throw ValidationError("trace lacks conflict triangles; not an indset_to_3swap output");
    return {n_src, k_src};
}

ReductionOutput promise_augment(const ReductionOutput& from_indset, int n_src, int k_src) {
    const RepairInstance& base = from_indset.instance;
    if (base.variant != Variant::swap)
        throw ValidationError("promise augmentation applies to swap instances");
    if (n_src < 0 || k_src < 1)
        throw ValidationError("bad source parameters for promise augmentation");

    GraphBuilder b(base.graph.r());
    for (int v = 0; v < base.graph.n(); ++v) b.add_vertex(base.graph.color(v));
    for (const auto& [u, v] : base.graph.edges()) b.add_edge(u, v);
    ReductionTrace trace = from_indset.trace;

    // one subdivided star per source vertex: swapping into it is repairable,
    // but only at a cost exceeding the budget
    for (int s = 0; s < n_src; ++s) {
        std::vector<int> ids;
        int center = b.add_vertex(0);
        ids.push_back(center);
        for (int i = 0; i <= k_src; ++i) {
            int spoke = b.add_vertex(1);
            int tip = b.add_vertex(2);
            b.add_edge(center, spoke);
            b.add_edge(spoke, tip);
            ids.push_back(spoke);
            ids.push_back(tip);
        }
        trace.add(tag("star", s), std::move(ids));
    }
    std::vector<int> clique;
    for (int c = 0; c < base.graph.r(); ++c) clique.push_back(b.add_vertex(c));
    for (int c = 0; c < base.graph.r(); ++c)
        for (int c2 = 0; c2 < c; ++c2) b.add_edge(clique[c2], clique[c]);
    trace.add("chromatic_clique", std::move(clique));

    assert_size(b, base.graph.n() + n_src * (2 * (k_src + 1) + 1) + base.graph.r(),
                "promise_augment");

    ReductionOutput out;
    out.instance = base;
    out.instance.graph = b.build();
    out.instance.promise = true;
    out.trace = std::move(trace);
    check_trace_covers(out.trace, out.instance.graph.n());
    return out;
}

// ---------------------------------------------------------------------------
// 3-SAT batch -> fix (cross composition)

namespace gadget {

const std::array<int, 10>& clause_initial_colors(int polarity_pattern) {
    // a, b, c, d, y1, y2, y3, y4, y5, r -- lexicographically smallest initial
    // coloring keeping the gadget proper beside all-true variables
    static const std::array<std::array<int, 10>, 8> table = {{
        {0, 2, 2, 0, 1, 1, 0, 2, 0, 1}, // pos pos pos
        {1, 0, 2, 0, 2, 1, 0, 1, 0, 2}, // neg pos pos
        {0, 1, 2, 0, 2, 1, 0, 1, 0, 2}, // pos neg pos
        {1, 2, 2, 0, 0, 1, 0, 1, 0, 2}, // neg neg pos
        {0, 2, 1, 0, 1, 2, 0, 2, 0, 1}, // pos pos neg
        {1, 0, 1, 0, 2, 2, 0, 1, 0, 2}, // neg pos neg
        {0, 1, 1, 0, 2, 2, 0, 1, 0, 2}, // pos neg neg
        {1, 2, 1, 0, 0, 2, 0, 1, 0, 2}, // neg neg neg
    }};
    if (polarity_pattern < 0 || polarity_pattern >= 8)
        throw ValidationError("polarity pattern must lie in 0..7");
    return table[polarity_pattern];
}

} // namespace gadget

namespace {

int exact_log2(int t) {
    int lg = 0;
    while ((1 << lg) < t) ++lg;
    return lg;
}

} // namespace

ReductionOutput cross_compose(const Cnf3Batch& batch, int r_target) {
    batch.validate();
    if (r_target < 3) throw InvalidTarget("cross composition needs at least 3 colors");
    const int t = batch.t();
    const int n = batch.formulas[0].num_vars;
    const int m = static_cast<int>(batch.formulas[0].clauses.size());
    const int k = 2 * exact_log2(t) + 2 * n + 9 * m;

    GraphBuilder b(r_target);
    ReductionTrace trace;

    std::vector<std::vector<int>> pos(t, std::vector<int>(n));
    std::vector<std::vector<int>> neg(t, std::vector<int>(n));
    std::vector<int> selector_var(t);
    std::vector<int> leaf(t);

    for (int h = 0; h < t; ++h) {
        // variable vertices; the initial coloring encodes the all-true assignment
        for (int i = 0; i < n; ++i) {
            pos[h][i] = b.add_vertex(1);
            neg[h][i] = b.add_vertex(0);
            b.add_edge(pos[h][i], neg[h][i]);
            trace.add(tag2("variable", h, i), {pos[h][i], neg[h][i]});
        }
        selector_var[h] = b.add_vertex(1);
        trace.add(tag("selector_variable", h), {selector_var[h]});

        int w = b.add_vertex(2);
        for (int i = 0; i < n; ++i) {
            b.add_edge(w, pos[h][i]);
            b.add_edge(w, neg[h][i]);
        }
        b.add_edge(w, selector_var[h]);
        trace.add(tag("selector", h), {w});
        std::vector<int> wp;
        for (int c = 0; c <= 1; ++c)
            for (int i = 0; i <= k; ++i) {
                int p = b.add_vertex(c);
                b.add_edge(w, p);
                wp.push_back(p);
            }
        trace.add(tag("selector_pendants", h), std::move(wp));

        for (int j = 0; j < m; ++j) {
            // pad short clauses by repeating the last literal
            Clause lits = batch.formulas[h].clauses[j];
            while (lits.size() < 3) lits.push_back(lits.back());
            int pattern = (lits[0] < 0 ? 1 : 0) | (lits[1] < 0 ? 2 : 0) | (lits[2] < 0 ? 4 : 0);
            const auto& colors = gadget::clause_initial_colors(pattern);

            int a = b.add_vertex(colors[0]);
            int bb = b.add_vertex(colors[1]);
            int c = b.add_vertex(colors[2]);
            int d = b.add_vertex(colors[3]);
            int y1 = b.add_vertex(colors[4]);
            int y2 = b.add_vertex(colors[5]);
            int y3 = b.add_vertex(colors[6]);
            int y4 = b.add_vertex(colors[7]);
            int y5 = b.add_vertex(colors[8]);
            int rj = b.add_vertex(colors[9]);
            b.add_edge(a, bb);
            b.add_edge(a, y1);
            b.add_edge(bb, y1);
            b.add_edge(c, d);
            b.add_edge(c, y2);
            b.add_edge(d, y2);
            b.add_edge(y3, y4);
            b.add_edge(y3, rj);
            b.add_edge(y4, rj);
            b.add_edge(y1, y4);
            b.add_edge(y2, y3);
            b.add_edge(y5, rj);
            trace.add(tag2("clause", h, j), {a, bb, c, d, y1, y2, y3, y4, y5, rj});

            int slot[3] = {a, bb, c};
            for (int s = 0; s < 3; ++s) {
                int var = std::abs(lits[s]) - 1;
                b.add_edge(slot[s], lits[s] > 0 ? pos[h][var] : neg[h][var]);
            }
            b.add_edge(d, selector_var[h]);

            std::vector<int> rp;
            for (int i = 0; i <= k; ++i) {
                int p = b.add_vertex(0);
                b.add_edge(rj, p);
                rp.push_back(p);
            }
            trace.add(tag2("clause_pendants", h, j), std::move(rp));
        }

        leaf[h] = b.add_vertex(0);
        b.add_edge(leaf[h], selector_var[h]);
        b.add_edge(leaf[h], w);
        trace.add(tag("leaf", h), {leaf[h]});
    }

    // spread tree: complete binary tree on the t leaves with every internal
    // node replaced by a triangle; the root carries the conflict pendants
    int root;
    if (t == 1) {
        root = leaf[0];
    } else {
        std::vector<int> top(t), left(t), right(t); // heap-indexed 1..t-1
        for (int node = 1; node < t; ++node) {
            top[node] = b.add_vertex(0);
            left[node] = b.add_vertex(2);
            right[node] = b.add_vertex(1);
            b.add_edge(top[node], left[node]);
            b.add_edge(top[node], right[node]);
            b.add_edge(left[node], right[node]);
            trace.add(tag("spread_triangle", node), {top[node], left[node], right[node]});
        }
        for (int node = 1; node < t; ++node) {
            int lc = 2 * node;
            int rc = 2 * node + 1;
            b.add_edge(left[node], lc < t ? top[lc] : leaf[lc - t]);
            b.add_edge(right[node], rc < t ? top[rc] : leaf[rc - t]);
        }
        root = top[1];
    }
    {
        std::vector<int> rp;
        for (int i = 0; i <= k; ++i) {
            int p = b.add_vertex(0);
            b.add_edge(root, p);
            rp.push_back(p);
        }
        trace.add("spread_root_pendants", std::move(rp));
    }

    int per_formula = 2 * n + 2 + 2 * (k + 1) + m * (10 + k + 1) + 1;
    int spread = (t == 1 ? 0 : 3 * (t - 1)) + (k + 1);
    int base_size = t * per_formula + spread;
    assert_size(b, base_size, "cross_compose");

    // pin every base vertex to the three base colors when lifting r
    if (r_target > 3) {
        for (int v = 0; v < base_size; ++v) {
            std::vector<int> pins;
            for (int c = 3; c < r_target; ++c)
                for (int i = 0; i <= k; ++i) {
                    int p = b.add_vertex(c);
                    b.add_edge(v, p);
                    pins.push_back(p);
                }
            trace.add(tag("pin_pendants", v), std::move(pins));
        }
        assert_size(b, base_size + base_size * (r_target - 3) * (k + 1), "cross_compose lift");
    }

    ReductionOutput out;
    out.instance.graph = b.build();
    out.instance.budget = k;
    out.instance.variant = Variant::fix;
    out.trace = std::move(trace);
    check_trace_covers(out.trace, out.instance.graph.n());
    return out;
}

// ---------------------------------------------------------------------------
// planar precoloring extension -> promise variants

namespace {

// bipartition sides; the smallest vertex of every component lands on side A
std::vector<int> bipartition_sides(const PrExtInstance& src) {
    ColoredGraph g(src.n, std::max(1, src.r), src.edges, std::vector<int>(src.n, 0));
    std::vector<int> side(src.n, -1);
    for (int s = 0; s < src.n; ++s) {
        if (side[s] >= 0) continue;
        side[s] = 0;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : g.neighbors(v)) {
                if (side[w] < 0) {
                    side[w] = 1 - side[v];
                    stack.push_back(w);
                } else if (side[w] == side[v]) {
                    throw NotBipartite("source graph is not bipartite");
                }
            }
        }
    }
    return side;
}

ReductionOutput planar_promise_impl(const PrExtInstance& src, bool fix_variant) {
    src.validate();
    if (src.r != 3)
        throw ValidationError("planar promise reductions are defined for r = 3");
    const auto w_set = src.precolored_set();
    if (w_set.empty())
        throw ValidationError("planar promise reductions need at least one precolored vertex "
                              "to host the chromatic-number triangle");
    std::vector<int> side = bipartition_sides(src);

    ColoredGraph structure(src.n, 3, src.edges, std::vector<int>(src.n, 0));
    for (int w : w_set) {
        if (structure.degree(w) != 1)
            throw PrecoloredDegreeNotOne("precolored vertex " + std::to_string(w) +
                                         " has degree " + std::to_string(structure.degree(w)));
    }

    const int h = src.uncolored_count();

    // initial colors on the source vertices
    std::vector<int> init(src.n);
    for (int v = 0; v < src.n; ++v) {
        if (src.precoloring[v] != PrExtInstance::kUncolored) {
            init[v] = src.precoloring[v];
            continue;
        }
        int from_neighbors = -1;
        for (int u : structure.neighbors(v)) {
            int c = src.precoloring[u];
            if (c != PrExtInstance::kUncolored && (from_neighbors < 0 || c < from_neighbors))
                from_neighbors = c;
        }
        if (from_neighbors >= 0)
            init[v] = from_neighbors;
        else
            init[v] = side[v] == 0 ? 0 : 1;
    }

    GraphBuilder b(3);
    ReductionTrace trace;
    std::vector<int> source_ids;
    for (int v = 0; v < src.n; ++v) source_ids.push_back(b.add_vertex(init[v]));
    trace.add("source", source_ids);
    for (const auto& [u, v] : src.edges) b.add_edge(u, v);

    int qualifying = 0;
    // companions supplying the two foreign colors to each uncolored vertex
    for (int x = 0; x < src.n; ++x) {
        if (src.precoloring[x] != PrExtInstance::kUncolored) continue;
        int i = init[x];
        int x1 = b.add_vertex((i + 1) % 3);
        int x2 = b.add_vertex((i + 2) % 3);
        if (fix_variant) {
            b.add_edge(x1, x2);
        } else {
            b.add_edge(x, x1);
            b.add_edge(x, x2);
        }
        trace.add(tag("companions", x), {x1, x2});
    }

    int triangle_host = -1; // first lock_t pendant of the smallest precolored vertex
    for (int w : w_set) {
        int cw = src.precoloring[w];
        int s_col;
        int t_col;
        bool locked_case;
        if (side[w] == 0 && cw != 0) {
            s_col = 0;
            t_col = 3 - cw; // the color outside {0, cw}
            locked_case = true;
        } else if (side[w] == 1 && cw != 1) {
            s_col = 1;
            t_col = 2 - cw; // the color outside {1, cw}
            locked_case = true;
        } else {
            s_col = (cw + 1) % 3;
            t_col = (cw + 2) % 3;
            locked_case = false;
        }
        std::vector<int> s_ids;
        std::vector<int> t_ids;
        for (int i = 0; i <= h; ++i) {
            int s = b.add_vertex(s_col);
            b.add_edge(w, s);
            s_ids.push_back(s);
        }
        for (int i = 0; i <= h; ++i) {
            int tt = b.add_vertex(t_col);
            b.add_edge(w, tt);
            t_ids.push_back(tt);
        }
        if (triangle_host < 0) triangle_host = t_ids.front();
        if (locked_case && h > 0) {
            std::vector<int> sp_ids;
            for (int i = 0; i < h; ++i) {
                int sp = b.add_vertex(cw);
                b.add_edge(s_ids[i], sp);
                sp_ids.push_back(sp);
            }
            trace.add(tag("lock_sprime", w), std::move(sp_ids));
        }
        if (locked_case) ++qualifying;
        trace.add(tag("lock_s", w), std::move(s_ids));
        trace.add(tag("lock_t", w), std::move(t_ids));
    }

    // the single odd cycle, pinning the chromatic number at 3; always the
    // final two vertices so that strip_promise_bipartite can drop them
    int host_color = b.color(triangle_host);
    int r1 = b.add_vertex((host_color + 1) % 3);
    int r2 = b.add_vertex((host_color + 2) % 3);
    b.add_edge(triangle_host, r1);
    b.add_edge(triangle_host, r2);
    b.add_edge(r1, r2);
    trace.add("promise_triangle", {r1, r2});

    int expected = src.n + 2 * h + static_cast<int>(w_set.size()) * 2 * (h + 1) +
                   qualifying * h + 2;
    assert_size(b, expected, fix_variant ? "prext_to_planar_fix_promise"
                                         : "prext_to_planar_swap_promise");

    ReductionOutput out;
    out.instance.graph = b.build();
    out.instance.budget = h;
    out.instance.variant = fix_variant ? Variant::fix : Variant::swap;
    out.instance.promise = true;
    out.trace = std::move(trace);
    check_trace_covers(out.trace, out.instance.graph.n());
    return out;
}

} // namespace

ReductionOutput prext_to_planar_swap_promise(const PrExtInstance& src) {
    return planar_promise_impl(src, false);
}

ReductionOutput prext_to_planar_fix_promise(const PrExtInstance& src) {
    return planar_promise_impl(src, true);
}

ReductionOutput strip_promise_bipartite(const ReductionOutput& out) {
    if (!out.trace.has("promise_triangle"))
        throw ValidationError("input is not a planar promise output (no promise_triangle record)");
    const auto& tri = out.trace.ids("promise_triangle");
    const int n = out.instance.graph.n();
    if (tri.size() != 2 || std::min(tri[0], tri[1]) != n - 2 || std::max(tri[0], tri[1]) != n - 1)
        throw ValidationError("promise triangle vertices are not the final two vertices");

    std::vector<Edge> edges;
    for (const auto& [u, v] : out.instance.graph.edges())
        if (u < n - 2 && v < n - 2) edges.emplace_back(u, v);
    std::vector<int> colors(out.instance.graph.coloring().begin(),
                            out.instance.graph.coloring().end() - 2);

    ReductionOutput stripped;
    stripped.instance = out.instance;
    stripped.instance.graph = ColoredGraph(n - 2, out.instance.graph.r(), std::move(edges),
                                           std::move(colors));
    stripped.instance.promise = false;
    for (const auto& rec : out.trace.records)
        if (rec.first != "promise_triangle") stripped.trace.records.push_back(rec);
    check_trace_covers(stripped.trace, stripped.instance.graph.n());
    return stripped;
}

} // namespace recolor
