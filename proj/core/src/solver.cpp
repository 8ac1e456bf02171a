#include "recolor/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace recolor {

std::string to_string(Variant v) {
    return v == Variant::fix ? "fix" : "swap";
}

Variant variant_from_string(const std::string& s) {
    if (s == "fix") return Variant::fix;
    if (s == "swap") return Variant::swap;
    throw ValidationError("unknown variant '" + s + "' (expected fix or swap)");
}

void RepairInstance::validate() const {
    if (budget < 0) throw ValidationError("budget must be nonnegative");
    if (adjacent_only && variant != Variant::swap)
        throw ValidationError("adjacent_only requires the swap variant");
}

int MoveCount::value() const {
    if (!value_) throw ValidationError("move count is unreachable");
    return *value_;
}

std::string to_string(const MoveCount& c) {
    return c.is_unreachable() ? "unreachable" : std::to_string(c.value());
}

std::string PromiseDiagnosis::describe() const {
    if (holds) return "promise holds";
    std::string out = "promise violated:";
    if (!chromatic_matches)
        out += " chromatic number " + std::to_string(chromatic) + " differs from r;";
    if (!class_sizes_realizable)
        out += " no proper coloring matches the color-class sizes;";
    return out;
}

// ---------------------------------------------------------------------------
// fix solvers

namespace {

bool fix_branch_rec(const ColoredGraph& g, std::vector<int>& colors, int remaining,
                    std::vector<Move>& path) {
    const Edge* confl = nullptr;
    for (const auto& e : g.edges()) {
        if (colors[e.first] == colors[e.second]) {
            confl = &e;
            break;
        }
    }
    if (!confl) return true;
    if (remaining == 0) return false;
    for (int side = 0; side < 2; ++side) {
        int v = side == 0 ? confl->first : confl->second;
        int old = colors[v];
        for (int c = 0; c < g.r(); ++c) {
            if (c == old) continue;
            colors[v] = c;
            path.push_back(RecolorMove{v, c});
            if (fix_branch_rec(g, colors, remaining - 1, path)) return true;
            path.pop_back();
            colors[v] = old;
        }
    }
    return false;
}

} // namespace

SolveResult fix_branch(const ColoredGraph& g, int budget) {
    if (budget < 0) throw ValidationError("budget must be nonnegative");
    std::vector<int> colors = g.coloring();
    std::vector<Move> path;
    SolveResult res;
    // a repairable coloring is repairable within n recolorings
    res.decision = fix_branch_rec(g, colors, std::min(budget, g.n()), path);
    if (res.decision) res.certificate = Certificate{std::move(path)};
    return res;
}

SolveResult fix_optimum(const ColoredGraph& g, const SearchLimits& limits) {
    if (g.n() > limits.enumeration_cap)
        throw SearchCapExceeded("fix_optimum: " + std::to_string(g.n()) +
                                " vertices exceed the cap of " + std::to_string(limits.enumeration_cap));
    if (!colorable_with(g, g.r())) {
        SolveResult res;
        res.decision = false;
        res.optimum = MoveCount::unreachable();
        return res;
    }
    for (int k = 0; k <= g.n(); ++k) {
        SolveResult probe = fix_branch(g, k);
        if (probe.decision) {
            SolveResult res;
            res.decision = true;
            res.optimum = MoveCount::finite(k);
            res.certificate = std::move(probe.certificate);
            return res;
        }
    }
    // a colorable structure is always repairable within n recolorings
    throw Error("fix_optimum: searched past n without finding a repair");
}

// ---------------------------------------------------------------------------
// exchange digraph and swap distance

ExchangeDigraph ExchangeDigraph::between(const std::vector<int>& current,
                                         const std::vector<int>& target, int r) {
    if (current.size() != target.size())
        throw ValidationError("colorings of different lengths");
    std::vector<int> have(r, 0), want(r, 0);
    ExchangeDigraph d;
    d.r_ = r;
    d.counts_.assign(static_cast<size_t>(r) * r, 0);
    for (size_t v = 0; v < current.size(); ++v) {
        int a = current[v];
        int b = target[v];
        if (a < 0 || a >= r || b < 0 || b >= r)
            throw ValidationError("coloring value outside 0..r-1");
        ++have[a];
        ++want[b];
        if (a != b) ++d.counts_[a * r + b];
    }
    if (have != want)
        throw MultisetMismatch("target coloring does not share the color-class multiset");
    return d;
}

int ExchangeDigraph::mismatches() const {
    return std::accumulate(counts_.begin(), counts_.end(), 0);
}

namespace {

// All directed simple cycles over node set 0..r-1, each rooted at its
// smallest node, as color sequences.
void enumerate_cycles(int r, int start, std::vector<int>& path, std::vector<char>& used,
                      std::vector<std::vector<int>>& out) {
    int last = path.back();
    for (int next = start; next < r; ++next) {
        if (used[next] || next == last) continue;
        if (next == start) continue;
        path.push_back(next);
        used[next] = 1;
        if (path.size() >= 2) out.push_back(path);
        enumerate_cycles(r, start, path, used, out);
        used[next] = 0;
        path.pop_back();
    }
}

std::vector<std::vector<int>> all_simple_cycles(int r) {
    std::vector<std::vector<int>> cycles;
    for (int s = 0; s < r; ++s) {
        std::vector<int> path{s};
        std::vector<char> used(r, 0);
        used[s] = 1;
        enumerate_cycles(r, s, path, used, cycles);
    }
    return cycles;
}

struct CycleMaximizer {
    int r;
    const std::vector<std::vector<int>>& cycles;
    std::vector<int> remaining; // arc counts
    int remaining_total = 0;
    int best = -1;
    std::vector<int> chosen;      // per-cycle multiplicity of current branch
    std::vector<int> best_chosen; // per-cycle multiplicity of best decomposition

    int& arc(int a, int b) { return remaining[a * r + b]; }

    void rec(size_t idx, int used) {
        if (used + remaining_total / 2 <= best) return;
        if (idx == cycles.size()) {
            if (remaining_total == 0 && used > best) {
                best = used;
                best_chosen = chosen;
            }
            return;
        }
        const auto& cyc = cycles[idx];
        int len = static_cast<int>(cyc.size());
        int maxq = remaining_total / len;
        for (int i = 0; i < len && maxq > 0; ++i)
            maxq = std::min(maxq, arc(cyc[i], cyc[(i + 1) % len]));
        for (int q = maxq; q >= 0; --q) {
            for (int i = 0; i < len; ++i) arc(cyc[i], cyc[(i + 1) % len]) -= q;
            remaining_total -= q * len;
            chosen[idx] = q;
            rec(idx + 1, used + q);
            chosen[idx] = 0;
            remaining_total += q * len;
            for (int i = 0; i < len; ++i) arc(cyc[i], cyc[(i + 1) % len]) += q;
        }
    }
};

} // namespace

ExchangeDigraph::Decomposition ExchangeDigraph::max_cycle_decomposition() const {
    Decomposition dec;
    auto cycles = all_simple_cycles(r_);
    // shorter cycles first: more cycles per arc
    std::stable_sort(cycles.begin(), cycles.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    CycleMaximizer mx{r_, cycles, counts_, mismatches(), -1,
                      std::vector<int>(cycles.size(), 0), {}};
    mx.rec(0, 0);
    if (mx.best < 0)
        throw Error("exchange digraph does not decompose into cycles");
    dec.cycle_count = mx.best;
    for (size_t i = 0; i < cycles.size(); ++i)
        for (int q = 0; q < mx.best_chosen[i]; ++q) dec.cycles.push_back(cycles[i]);
    return dec;
}

int swap_distance_to(const ColoredGraph& g, const std::vector<int>& target) {
    auto d = ExchangeDigraph::between(g.coloring(), target, g.r());
    if (d.mismatches() == 0) return 0;
    return d.mismatches() - d.max_cycle_decomposition().cycle_count;
}

Certificate swap_moves_to(const ColoredGraph& g, const std::vector<int>& target) {
    auto d = ExchangeDigraph::between(g.coloring(), target, g.r());
    Certificate cert;
    if (d.mismatches() == 0) return cert;
    auto dec = d.max_cycle_decomposition();

    int r = g.r();
    std::vector<std::deque<int>> bucket(static_cast<size_t>(r) * r);
    for (int v = 0; v < g.n(); ++v) {
        if (g.color(v) != target[v]) bucket[g.color(v) * r + target[v]].push_back(v);
    }
    for (const auto& cyc : dec.cycles) {
        int len = static_cast<int>(cyc.size());
        std::vector<int> verts(len);
        for (int i = 0; i < len; ++i) {
            auto& q = bucket[cyc[i] * r + cyc[(i + 1) % len]];
            verts[i] = q.front();
            q.pop_front();
        }
        for (int i = 0; i + 1 < len; ++i) cert.moves.push_back(SwapMove{verts[i], verts[i + 1]});
    }
    return cert;
}

// ---------------------------------------------------------------------------
// swap optimum by enumeration of equal-multiset proper colorings

namespace {

struct SwapOptimumSearch {
    const ColoredGraph& g;
    std::vector<int> order;
    std::vector<int> assigned;
    std::vector<int> capacity;
    int mismatches = 0;
    int best = -1;
    std::vector<int> best_target;

    void rec(size_t idx) {
        if (best == 0) return;
        if (best >= 0 && (mismatches + 1) / 2 >= best) return;
        if (idx == order.size()) {
            auto d = ExchangeDigraph::between(g.coloring(), assigned, g.r());
            int dist = d.mismatches() == 0
                           ? 0
                           : d.mismatches() - d.max_cycle_decomposition().cycle_count;
            if (best < 0 || dist < best) {
                best = dist;
                best_target = assigned;
            }
            return;
        }
        int v = order[idx];
        int cur = g.color(v);
        auto try_color = [&](int c) {
            if (capacity[c] == 0) return;
            for (int w : g.neighbors(v))
                if (assigned[w] == c) return;
            --capacity[c];
            assigned[v] = c;
            mismatches += (c != cur) ? 1 : 0;
            rec(idx + 1);
            mismatches -= (c != cur) ? 1 : 0;
            assigned[v] = -1;
            ++capacity[c];
        };
        try_color(cur);
        for (int c = 0; c < g.r(); ++c)
            if (c != cur) try_color(c);
    }
};

} // namespace

SolveResult swap_optimum(const ColoredGraph& g, const SearchLimits& limits) {
    if (g.n() > limits.enumeration_cap)
        throw SearchCapExceeded("swap_optimum: " + std::to_string(g.n()) +
                                " vertices exceed the cap of " + std::to_string(limits.enumeration_cap));
    SolveResult res;
    if (is_proper(g)) {
        res.decision = true;
        res.optimum = MoveCount::finite(0);
        res.certificate = Certificate{};
        return res;
    }
    SwapOptimumSearch search{g, {}, std::vector<int>(g.n(), -1), color_class_sizes(g), 0, -1, {}};
    search.order.resize(g.n());
    std::iota(search.order.begin(), search.order.end(), 0);
    std::stable_sort(search.order.begin(), search.order.end(),
                     [&](int a, int b) { return g.degree(a) > g.degree(b); });
    search.rec(0);
    if (search.best < 0) {
        res.decision = false;
        res.optimum = MoveCount::unreachable();
        return res;
    }
    res.decision = true;
    res.optimum = MoveCount::finite(search.best);
    res.certificate = swap_moves_to(g, search.best_target);
    return res;
}

// ---------------------------------------------------------------------------
// state-space breadth-first search

unsigned long long pack_coloring(const std::vector<int>& coloring, int r) {
    unsigned long long key = 0;
    for (size_t v = coloring.size(); v-- > 0;) key = key * r + coloring[v];
    return key;
}

namespace {

std::vector<int> unpack_coloring(unsigned long long key, int n, int r) {
    std::vector<int> colors(n);
    for (int v = 0; v < n; ++v) {
        colors[v] = static_cast<int>(key % r);
        key /= r;
    }
    return colors;
}

// the u64 packing needs r^n < 2^63; exploration size is guarded dynamically
void check_state_space(const ColoredGraph& g, const SearchLimits&) {
    if (g.n() * std::log2(std::max(2, g.r())) > 62)
        throw SearchCapExceeded("state search: coloring does not pack into 64 bits");
}

// predecessor move packed into 32 bits: kind(2) | a(12) | b_or_color(12) | old_color(6)
constexpr std::uint32_t kRootMark = 0;

std::uint32_t pack_move(int kind, int a, int b, int old_color) {
    return static_cast<std::uint32_t>(kind) | (static_cast<std::uint32_t>(a) << 2) |
           (static_cast<std::uint32_t>(b) << 14) | (static_cast<std::uint32_t>(old_color) << 26);
}

} // namespace

SolveResult state_bfs_optimum(const ColoredGraph& g, Variant variant, bool adjacent_only,
                              const SearchLimits& limits) {
    check_state_space(g, limits);
    SolveResult res;
    if (is_proper(g)) {
        res.decision = true;
        res.optimum = MoveCount::finite(0);
        res.certificate = Certificate{};
        return res;
    }
    const int n = g.n();
    const int r = g.r();
    const unsigned long long start = pack_coloring(g.coloring(), r);
    std::unordered_map<unsigned long long, std::uint32_t> prev;
    prev.emplace(start, kRootMark);
    std::deque<std::pair<unsigned long long, int>> queue{{start, 0}};

    auto reconstruct = [&](unsigned long long state, int dist) {
        std::vector<Move> moves;
        unsigned long long cur = state;
        while (true) {
            std::uint32_t enc = prev.at(cur);
            int kind = enc & 3;
            if (kind == 0) break;
            int a = (enc >> 2) & 0xfff;
            int b = (enc >> 14) & 0xfff;
            int old_color = (enc >> 26) & 0x3f;
            auto colors = unpack_coloring(cur, n, r);
            if (kind == 1) {
                moves.push_back(RecolorMove{a, colors[a]});
                colors[a] = old_color;
            } else {
                moves.push_back(SwapMove{a, b});
                std::swap(colors[a], colors[b]);
            }
            cur = pack_coloring(colors, r);
        }
        std::reverse(moves.begin(), moves.end());
        res.decision = true;
        res.optimum = MoveCount::finite(dist);
        res.certificate = Certificate{std::move(moves)};
    };

    while (!queue.empty()) {
        auto [state, dist] = queue.front();
        queue.pop_front();
        auto colors = unpack_coloring(state, n, r);

        auto visit = [&](unsigned long long next, std::uint32_t enc) {
            if (prev.size() >= static_cast<size_t>(limits.state_cap))
                throw SearchCapExceeded("state search exceeded the state cap");
            auto [it, fresh] = prev.emplace(next, enc);
            if (!fresh) return false;
            queue.emplace_back(next, dist + 1);
            auto cand = unpack_coloring(next, n, r);
            bool proper = true;
            for (const auto& [u, v] : g.edges())
                if (cand[u] == cand[v]) {
                    proper = false;
                    break;
                }
            return proper;
        };

        if (variant == Variant::fix) {
            for (int v = 0; v < n; ++v) {
                for (int c = 0; c < r; ++c) {
                    if (c == colors[v]) continue;
                    auto next_colors = colors;
                    next_colors[v] = c;
                    unsigned long long next = pack_coloring(next_colors, r);
                    if (visit(next, pack_move(1, v, c, colors[v]))) {
                        reconstruct(next, dist + 1);
                        return res;
                    }
                }
            }
        } else if (!adjacent_only) {
            for (int a = 0; a < n; ++a) {
                for (int b = a + 1; b < n; ++b) {
                    if (colors[a] == colors[b]) continue;
                    auto next_colors = colors;
                    std::swap(next_colors[a], next_colors[b]);
                    unsigned long long next = pack_coloring(next_colors, r);
                    if (visit(next, pack_move(2, a, b, 0))) {
                        reconstruct(next, dist + 1);
                        return res;
                    }
                }
            }
        } else {
            for (const auto& [a, b] : g.edges()) {
                if (colors[a] == colors[b]) continue;
                auto next_colors = colors;
                std::swap(next_colors[a], next_colors[b]);
                unsigned long long next = pack_coloring(next_colors, r);
                if (visit(next, pack_move(2, a, b, 0))) {
                    reconstruct(next, dist + 1);
                    return res;
                }
            }
        }
    }
    res.decision = false;
    res.optimum = MoveCount::unreachable();
    return res;
}

SolveResult adjacent_swap_optimum(const ColoredGraph& g, const SearchLimits& limits) {
    return state_bfs_optimum(g, Variant::swap, true, limits);
}

std::vector<std::pair<unsigned long long, int>> swap_distance_map(const ColoredGraph& g,
                                                                  const SearchLimits& limits) {
    check_state_space(g, limits);
    const int n = g.n();
    const int r = g.r();
    const unsigned long long start = pack_coloring(g.coloring(), r);
    std::unordered_map<unsigned long long, int> dist;
    dist.emplace(start, 0);
    std::deque<unsigned long long> queue{start};
    while (!queue.empty()) {
        unsigned long long state = queue.front();
        queue.pop_front();
        int d = dist.at(state);
        auto colors = unpack_coloring(state, n, r);
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                if (colors[a] == colors[b]) continue;
                std::swap(colors[a], colors[b]);
                unsigned long long next = pack_coloring(colors, r);
                std::swap(colors[a], colors[b]);
                if (dist.emplace(next, d + 1).second) {
                    if (dist.size() > static_cast<size_t>(limits.state_cap))
                        throw SearchCapExceeded("swap distance map exceeded the state cap");
                    queue.push_back(next);
                }
            }
        }
    }
    std::vector<std::pair<unsigned long long, int>> out(dist.begin(), dist.end());
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// promise check

namespace {

// Pendant vertices (degree 1, neighbor kept) are split off and handled
// analytically: a pendant only forbids its neighbor's final color, so once
// the core is colored, pendant feasibility is a tiny transportation problem.
// Each forbidden-color group excludes exactly one color, so Hall's condition
// collapses to: cap[c] + forbid[c] <= total pendants, for every color c.
struct ClassSizeSearch {
    int r = 0;
    std::vector<std::vector<int>> core_adj;
    std::vector<int> attached;   // pendants hanging off each core vertex
    std::vector<int> order;      // core vertices, components first, fans grouped
    std::vector<int> twin;       // twin class per core vertex (same core
                                 // neighborhood and pendant count)
    int pendant_total = 0;
    std::vector<int> assigned;
    std::vector<int> capacity;
    std::vector<int> forbid;     // pendants forbidding each color so far

    bool pendants_feasible() const {
        for (int c = 0; c < r; ++c)
            if (capacity[c] + forbid[c] > pendant_total) return false;
        return true;
    }

    bool rec(size_t idx) {
        if (idx == order.size()) return pendants_feasible();
        int v = order[idx];
        // interchangeable fan members take nondecreasing colors
        int floor_color = 0;
        if (idx > 0 && twin[order[idx - 1]] == twin[v]) floor_color = assigned[order[idx - 1]];
        for (int c = floor_color; c < r; ++c) {
            if (capacity[c] == 0) continue;
            bool blocked = false;
            for (int w : core_adj[v])
                if (assigned[w] == c) {
                    blocked = true;
                    break;
                }
            if (blocked) continue;
            --capacity[c];
            assigned[v] = c;
            forbid[c] += attached[v];
            if (rec(idx + 1)) return true;
            forbid[c] -= attached[v];
            assigned[v] = -1;
            ++capacity[c];
        }
        return false;
    }
};

} // namespace

bool exists_proper_with_class_sizes(const ColoredGraph& g, const std::vector<int>& sizes) {
    if (static_cast<int>(sizes.size()) != g.r())
        throw ValidationError("class size vector must have one entry per color");
    if (std::accumulate(sizes.begin(), sizes.end(), 0) != g.n())
        throw ValidationError("class sizes must sum to the vertex count");
    const int n = g.n();

    std::vector<char> pendant(n, 0);
    for (int v = 0; v < n; ++v)
        if (g.degree(v) == 1 && !pendant[g.neighbors(v)[0]]) pendant[v] = 1;

    ClassSizeSearch search;
    search.r = g.r();
    search.capacity = sizes;
    search.forbid.assign(g.r(), 0);

    std::vector<int> local(n, -1);
    std::vector<int> core;
    for (int v = 0; v < n; ++v) {
        if (pendant[v]) {
            ++search.pendant_total;
            continue;
        }
        local[v] = static_cast<int>(core.size());
        core.push_back(v);
    }
    int cn = static_cast<int>(core.size());
    search.core_adj.resize(cn);
    search.attached.assign(cn, 0);
    search.assigned.assign(cn, -1);
    for (int i = 0; i < cn; ++i) {
        for (int w : g.neighbors(core[i])) {
            if (pendant[w])
                ++search.attached[i];
            else
                search.core_adj[i].push_back(local[w]);
        }
    }

    // twin classes over (core neighborhood, pendant count)
    {
        std::unordered_map<std::string, int> groups;
        search.twin.resize(cn);
        for (int i = 0; i < cn; ++i) {
            std::string key;
            key.reserve(search.core_adj[i].size() * 4 + 4);
            for (int w : search.core_adj[i]) key.append(reinterpret_cast<const char*>(&w), 4);
            key.append(reinterpret_cast<const char*>(&search.attached[i]), 4);
            auto [it, fresh] = groups.emplace(std::move(key), static_cast<int>(groups.size()));
            search.twin[i] = it->second;
        }
    }

    // components largest first; breadth-first within, so fans of a hub are
    // enqueued (and therefore assigned) consecutively
    {
        std::vector<int> comp(cn, -1);
        std::vector<std::vector<int>> members;
        for (int s = 0; s < cn; ++s) {
            if (comp[s] >= 0) continue;
            int id = static_cast<int>(members.size());
            members.emplace_back();
            std::deque<int> queue{s};
            comp[s] = id;
            while (!queue.empty()) {
                int v = queue.front();
                queue.pop_front();
                members[id].push_back(v);
                for (int w : search.core_adj[v])
                    if (comp[w] < 0) {
                        comp[w] = id;
                        queue.push_back(w);
                    }
            }
        }
        std::vector<int> comp_order(members.size());
        std::iota(comp_order.begin(), comp_order.end(), 0);
        std::stable_sort(comp_order.begin(), comp_order.end(), [&](int a, int b) {
            return members[a].size() > members[b].size();
        });
        for (int id : comp_order)
            for (int v : members[id]) search.order.push_back(v);
    }

    return search.rec(0);
}

PromiseDiagnosis promise_check(const RepairInstance& inst, const SearchLimits& limits) {
    PromiseDiagnosis diag;
    diag.chromatic = chromatic_number(inst.graph, limits.chromatic_cap);
    diag.chromatic_matches = diag.chromatic == inst.graph.r();
    diag.class_sizes_realizable =
        exists_proper_with_class_sizes(inst.graph, color_class_sizes(inst.graph));
    diag.holds = diag.chromatic_matches && diag.class_sizes_realizable;
    return diag;
}

// ---------------------------------------------------------------------------
// budget-bounded swap search

namespace {

struct SwapSearcher {
    const ColoredGraph& g;
    SwapSearchOptions opts;
    std::vector<int> colors;
    std::vector<int> twin_class;
    std::unordered_map<std::string, int> memo;
    std::vector<Move> path;
    std::unordered_set<std::uint64_t> move_keys;
    std::unordered_set<std::uint64_t> pair_seen;
    long nodes = 0;

    explicit SwapSearcher(const ColoredGraph& graph, const SwapSearchOptions& options)
        : g(graph), opts(options), colors(graph.coloring()) {
        // structural twins: identical open neighborhoods
        std::unordered_map<std::string, int> groups;
        twin_class.resize(g.n());
        for (int v = 0; v < g.n(); ++v) {
            std::string key;
            key.reserve(g.degree(v) * 4);
            for (int w : g.neighbors(v)) {
                key.append(reinterpret_cast<const char*>(&w), sizeof(int));
            }
            auto [it, fresh] = groups.emplace(key, static_cast<int>(groups.size()));
            twin_class[v] = it->second;
        }
    }

    std::string state_key() const {
        std::string key(colors.size(), '\0');
        for (size_t v = 0; v < colors.size(); ++v) key[v] = static_cast<char>(colors[v]);
        return key;
    }

    int conflict_delta(int a, int b) const {
        int delta = 0;
        for (int w : g.neighbors(a)) {
            if (w == b) continue;
            delta += (colors[w] == colors[b]) - (colors[w] == colors[a]);
        }
        for (int w : g.neighbors(b)) {
            if (w == a) continue;
            delta += (colors[w] == colors[a]) - (colors[w] == colors[b]);
        }
        return delta;
    }

    bool dfs(int remaining) {
        if (opts.node_limit >= 0 && ++nodes > opts.node_limit)
            throw SearchCapExceeded("swap search exceeded the node limit");

        std::vector<Edge> confl;
        for (const auto& e : g.edges())
            if (colors[e.first] == colors[e.second]) confl.push_back(e);
        if (confl.empty()) return true;
        if (remaining == 0) return false;

        // disjoint conflict edges each need a changed endpoint; a swap changes two
        int matching = 0;
        {
            std::vector<char> used(g.n(), 0);
            for (const auto& [u, v] : confl)
                if (!used[u] && !used[v]) {
                    used[u] = used[v] = 1;
                    ++matching;
                }
        }
        if ((matching + 1) / 2 > remaining) return false;

        auto [it, fresh] = memo.try_emplace(state_key(), remaining);
        if (!fresh) {
            if (it->second >= remaining) return false;
            it->second = remaining;
        }

        if (remaining == 1) return last_move(confl);

        std::vector<char> in_region(g.n(), 1);
        if (opts.restrict_to_conflict_region) {
            std::fill(in_region.begin(), in_region.end(), 0);
            for (const auto& [u, v] : confl) {
                in_region[u] = in_region[v] = 1;
                for (int w : g.neighbors(u)) in_region[w] = 1;
                for (int w : g.neighbors(v)) in_region[w] = 1;
            }
        }

        std::vector<std::tuple<int, int, int>> moves; // (delta, a, b)
        move_keys.clear();
        pair_seen.clear();
        for (int u = 0; u < g.n(); ++u) {
            if (!in_region[u]) continue;
            const std::vector<int>* partners = opts.adjacent_only ? &g.neighbors(u) : nullptr;
            int partner_count = partners ? static_cast<int>(partners->size()) : g.n();
            for (int pi = 0; pi < partner_count; ++pi) {
                int v = partners ? (*partners)[pi] : pi;
                if (v == u || colors[v] == colors[u]) continue;
                int a = std::min(u, v);
                int b = std::max(u, v);
                if (!pair_seen.insert((static_cast<std::uint64_t>(a) << 32) | b).second) continue;
                if (opts.collapse_twins) {
                    std::uint64_t ka = (static_cast<std::uint64_t>(twin_class[a]) << 6) | colors[a];
                    std::uint64_t kb = (static_cast<std::uint64_t>(twin_class[b]) << 6) | colors[b];
                    if (ka > kb) std::swap(ka, kb);
                    std::uint64_t key = (ka << 32) | kb;
                    if (!move_keys.insert(key).second) continue;
                }
                moves.emplace_back(conflict_delta(a, b), a, b);
            }
        }
        std::sort(moves.begin(), moves.end());

        for (const auto& [delta, a, b] : moves) {
            std::swap(colors[a], colors[b]);
            path.push_back(SwapMove{a, b});
            if (dfs(remaining - 1)) return true;
            path.pop_back();
            std::swap(colors[a], colors[b]);
        }
        return false;
    }

    // one swap left: it must resolve every conflict, so it touches the first
    // conflict edge; enumerate partners directly
    bool last_move(const std::vector<Edge>& confl) {
        for (int u : {confl.front().first, confl.front().second}) {
            const std::vector<int>* partners = opts.adjacent_only ? &g.neighbors(u) : nullptr;
            int partner_count = partners ? static_cast<int>(partners->size()) : g.n();
            for (int pi = 0; pi < partner_count; ++pi) {
                int v = partners ? (*partners)[pi] : pi;
                if (v == u || colors[v] == colors[u]) continue;
                bool covered = true;
                for (const auto& [a, b] : confl)
                    if (a != u && b != u && a != v && b != v) {
                        covered = false;
                        break;
                    }
                if (!covered) continue;
                std::swap(colors[u], colors[v]);
                bool proper = true;
                for (int w : g.neighbors(u))
                    if (colors[w] == colors[u] && w != v) {
                        proper = false;
                        break;
                    }
                if (proper) {
                    for (int w : g.neighbors(v))
                        if (colors[w] == colors[v] && w != u) {
                            proper = false;
                            break;
                        }
                }
                if (proper) {
                    path.push_back(SwapMove{u, v});
                    return true;
                }
                std::swap(colors[u], colors[v]);
            }
        }
        return false;
    }
};

} // namespace

SolveResult swap_search(const ColoredGraph& g, int budget, const SwapSearchOptions& opts) {
    if (budget < 0) throw ValidationError("budget must be nonnegative");
    SwapSearcher searcher(g, opts);
    SolveResult res;
    // every reachable proper coloring sits within n unrestricted swaps of the
    // start; sliding colors along edges can take up to n^2
    int cap = opts.adjacent_only ? g.n() * g.n() : g.n();
    res.decision = searcher.dfs(std::min(budget, cap));
    if (res.decision) res.certificate = Certificate{std::move(searcher.path)};
    return res;
}

// ---------------------------------------------------------------------------
// instance-level dispatch

SolveResult solve(const RepairInstance& inst, const SearchLimits& limits) {
    inst.validate();
    SolveResult res;
    if (inst.adjacent_only) {
        res = adjacent_swap_optimum(inst.graph, limits);
    } else if (inst.variant == Variant::fix) {
        if (inst.graph.n() <= limits.enumeration_cap) {
            res = fix_optimum(inst.graph, limits);
        } else {
            res = fix_branch(inst.graph, inst.budget);
            return res; // decision already against the budget
        }
    } else {
        if (inst.graph.n() <= limits.enumeration_cap) {
            res = swap_optimum(inst.graph, limits);
        } else {
            res = swap_search(inst.graph, inst.budget);
            return res;
        }
    }
    res.decision = res.optimum.has_value() && !res.optimum->is_unreachable() &&
                   res.optimum->value() <= inst.budget;
    return res;
}

} // namespace recolor
