#include "recolor/corpus.hpp"

#include <algorithm>

namespace recolor {

std::uint64_t rng_below(std::mt19937_64& rng, std::uint64_t bound) {
    return bound == 0 ? 0 : rng() % bound;
}

RepairFile separating_example() {
    GraphBuilder b(3);
    ReductionTrace trace;
    int v1 = b.add_vertex(0);
    int v2 = b.add_vertex(1);
    int v3 = b.add_vertex(2);
    b.add_edge(v1, v2);
    b.add_edge(v1, v3);
    b.add_edge(v2, v3);
    trace.add("centers", {v1, v2, v3});
    // each center: three pendants of its own color, three of the next color
    int center[3] = {v1, v2, v3};
    for (int i = 0; i < 3; ++i) {
        std::vector<int> ids;
        for (int c : {i, (i + 1) % 3}) {
            for (int p = 0; p < 3; ++p) {
                int id = b.add_vertex(c);
                b.add_edge(center[i], id);
                ids.push_back(id);
            }
        }
        trace.add("pendants(" + std::to_string(i) + ")", std::move(ids));
    }
    RepairFile file;
    file.instance.graph = b.build();
    file.instance.budget = 3;
    file.instance.variant = Variant::fix;
    file.trace = std::move(trace);
    return file;
}

namespace {

std::vector<Edge> random_edges(std::mt19937_64& rng, int n, int edge_percent) {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng_below(rng, 100) < static_cast<std::uint64_t>(edge_percent))
                edges.emplace_back(u, v);
    return edges;
}

} // namespace

RepairFile random_repair(std::mt19937_64& rng, int n, int r, int edge_percent, Variant variant,
                         int budget) {
    std::vector<int> colors(n);
    for (int v = 0; v < n; ++v) colors[v] = static_cast<int>(rng_below(rng, r));
    RepairFile file;
    file.instance.graph = ColoredGraph(n, r, random_edges(rng, n, edge_percent), std::move(colors));
    file.instance.budget = budget;
    file.instance.variant = variant;
    return file;
}

PrExtInstance random_prext(std::mt19937_64& rng, int n, int edge_percent, int precolor_percent) {
    PrExtInstance src;
    src.n = n;
    src.r = 3;
    src.edges = random_edges(rng, n, edge_percent);
    src.precoloring.assign(n, PrExtInstance::kUncolored);
    ColoredGraph structure(n, 3, src.edges, std::vector<int>(n, 0));
    for (int v = 0; v < n; ++v) {
        if (rng_below(rng, 100) >= static_cast<std::uint64_t>(precolor_percent)) continue;
        // keep the precoloring proper: avoid colors already on neighbors
        std::vector<char> banned(3, 0);
        for (int w : structure.neighbors(v))
            if (src.precoloring[w] != PrExtInstance::kUncolored) banned[src.precoloring[w]] = 1;
        std::vector<int> open;
        for (int c = 0; c < 3; ++c)
            if (!banned[c]) open.push_back(c);
        if (open.empty()) continue;
        src.precoloring[v] = open[rng_below(rng, open.size())];
    }
    return src;
}

PrExtInstance random_planar_ready_prext(std::mt19937_64& rng, int n) {
    if (n < 2) throw ValidationError("planar-ready sources need at least 2 vertices");
    PrExtInstance src;
    src.n = n;
    src.r = 3;
    for (int v = 1; v < n; ++v)
        src.edges.emplace_back(static_cast<int>(rng_below(rng, v)), v);
    src.precoloring.assign(n, PrExtInstance::kUncolored);
    std::vector<int> degree(n, 0);
    for (const auto& [u, v] : src.edges) {
        ++degree[u];
        ++degree[v];
    }
    std::vector<int> leaves;
    for (int v = 0; v < n; ++v)
        if (degree[v] == 1) leaves.push_back(v);
    // precolor a nonempty random subset of the leaves
    int take = 1 + static_cast<int>(rng_below(rng, leaves.size()));
    for (int i = 0; i < take; ++i)
        src.precoloring[leaves[i]] = static_cast<int>(rng_below(rng, 3));
    return src;
}

IndSetInstance random_indset(std::mt19937_64& rng, int n, int edge_percent, int k) {
    IndSetInstance src;
    src.n = n;
    src.k = k;
    src.edges = random_edges(rng, n, edge_percent);
    return src;
}

Cnf3Batch random_cnf3batch(std::mt19937_64& rng, int t, int vars, int clauses) {
    Cnf3Batch batch;
    for (int h = 0; h < t; ++h) {
        Cnf3Formula f;
        f.num_vars = vars;
        for (int j = 0; j < clauses; ++j) {
            Clause clause;
            std::vector<int> pool(vars);
            for (int i = 0; i < vars; ++i) pool[i] = i + 1;
            int width = std::min(3, vars);
            for (int i = 0; i < width; ++i) {
                int pick = static_cast<int>(rng_below(rng, pool.size()));
                int var = pool[pick];
                pool.erase(pool.begin() + pick);
                clause.push_back(rng_below(rng, 2) ? var : -var);
            }
            f.clauses.push_back(std::move(clause));
        }
        batch.formulas.push_back(std::move(f));
    }
    return batch;
}

} // namespace recolor
