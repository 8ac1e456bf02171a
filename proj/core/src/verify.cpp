#include "recolor/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace recolor {

// ---------------------------------------------------------------------------
// source oracles

namespace {

bool prext_extend_rec(const ColoredGraph& structure, std::vector<int>& colors,
                      const std::vector<int>& order, size_t idx) {
    if (idx == order.size()) return true;
    int v = order[idx];
    for (int c = 0; c < structure.r(); ++c) {
        bool blocked = false;
        for (int w : structure.neighbors(v))
            if (colors[w] == c) {
                blocked = true;
                break;
            }
        if (blocked) continue;
        colors[v] = c;
        if (prext_extend_rec(structure, colors, order, idx + 1)) return true;
        colors[v] = PrExtInstance::kUncolored;
    }
    return false;
}

} // namespace

bool oracle_prext(const PrExtInstance& src, int cap) {
    src.validate();
    if (src.n > cap)
        throw SearchCapExceeded("oracle_prext: " + std::to_string(src.n) +
                                " vertices exceed the cap of " + std::to_string(cap));
    ColoredGraph structure(src.n, src.r, src.edges, std::vector<int>(src.n, 0));
    std::vector<int> colors = src.precoloring;
    std::vector<int> order;
    for (int v = 0; v < src.n; ++v)
        if (colors[v] == PrExtInstance::kUncolored) order.push_back(v);
    return prext_extend_rec(structure, colors, order, 0);
}

namespace {

bool indset_rec(const ColoredGraph& g, int v, int need, std::vector<int>& chosen) {
    if (need == 0) return true;
    if (g.n() - v < need) return false;
    bool free = true;
    for (int w : chosen)
        if (g.adjacent(v, w)) {
            free = false;
            break;
        }
    if (free) {
        chosen.push_back(v);
        if (indset_rec(g, v + 1, need - 1, chosen)) return true;
        chosen.pop_back();
    }
    return indset_rec(g, v + 1, need, chosen);
}

} // namespace

std::optional<std::vector<int>> indset_witness(const IndSetInstance& src, int cap) {
    src.validate();
    if (src.n > cap)
        throw SearchCapExceeded("oracle_indset: " + std::to_string(src.n) +
                                " vertices exceed the cap of " + std::to_string(cap));
    ColoredGraph g(src.n, 1, src.edges, std::vector<int>(src.n, 0));
    std::vector<int> chosen;
    if (indset_rec(g, 0, src.k, chosen)) return chosen;
    return std::nullopt;
}

bool oracle_indset(const IndSetInstance& src, int cap) {
    return indset_witness(src, cap).has_value();
}

namespace {

bool clause_satisfied(const Clause& clause, unsigned mask) {
    for (int lit : clause) {
        int var = std::abs(lit) - 1;
        bool value = (mask >> var) & 1u;
        if ((lit > 0) == value) return true;
    }
    return false;
}

} // namespace

std::optional<std::vector<bool>> sat_witness(const Cnf3Formula& formula, int cap) {
    formula.validate();
    if (formula.num_vars > cap)
        throw SearchCapExceeded("oracle_3sat: " + std::to_string(formula.num_vars) +
                                " variables exceed the cap of " + std::to_string(cap));
    for (unsigned mask = 0; mask < (1u << formula.num_vars); ++mask) {
        bool ok = true;
        for (const auto& clause : formula.clauses)
            if (!clause_satisfied(clause, mask)) {
                ok = false;
                break;
            }
        if (ok) {
            std::vector<bool> assignment(formula.num_vars);
            for (int i = 0; i < formula.num_vars; ++i) assignment[i] = (mask >> i) & 1u;
            return assignment;
        }
    }
    return std::nullopt;
}

bool oracle_3sat(const Cnf3Formula& formula, int cap) {
    return sat_witness(formula, cap).has_value();
}

// ---------------------------------------------------------------------------
// certificate replays

Certificate replay_indset_certificate(const IndSetInstance& src, const std::vector<int>& witness,
                                      const ReductionOutput& target) {
    src.validate();
    if (static_cast<int>(witness.size()) != src.k)
        throw WitnessInvalid("witness has size " + std::to_string(witness.size()) +
                             ", expected " + std::to_string(src.k));
    std::vector<int> sorted = witness;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw WitnessInvalid("witness repeats a vertex");
    for (int v : sorted)
        if (v < 0 || v >= src.n) throw WitnessInvalid("witness vertex out of range");
    for (size_t i = 0; i < sorted.size(); ++i)
        for (size_t j = i + 1; j < sorted.size(); ++j)
            for (const auto& [u, v] : src.edges)
                if ((u == sorted[i] && v == sorted[j]) || (u == sorted[j] && v == sorted[i]))
                    throw WitnessInvalid("witness vertices " + std::to_string(sorted[i]) + " and " +
                                         std::to_string(sorted[j]) + " are adjacent");

    const auto& source_ids = target.trace.ids("source");
    Certificate cert;
    for (int j = 0; j < src.k; ++j) {
        const auto& tri = target.trace.ids("conflict_triangle(" + std::to_string(j) + ")");
        cert.moves.push_back(SwapMove{tri[2], source_ids[sorted[j]]});
    }
    for (int v : sorted) {
        const auto& tri = target.trace.ids("vertex_triangle(" + std::to_string(v) + ")");
        cert.moves.push_back(SwapMove{tri[1], tri[2]});
    }
    if (!is_proper(apply(target.instance.graph, cert)))
        throw Error("independent-set replay did not reach a proper coloring");
    return cert;
}

namespace {

struct ClauseRepair {
    std::vector<int> final_colors; // a,b,c,d,y1..y5,r
    int changes = 0;
};

// cheapest proper completion of one clause gadget given the final colors of
// its four attached variable vertices; the guard vertex must avoid color 0
ClauseRepair repair_clause_gadget(const std::array<int, 10>& current,
                                  const std::array<int, 4>& neighbor_final) {
    static const std::pair<int, int> interior_edges[] = {
        {0, 1}, {0, 4}, {1, 4}, {2, 3}, {2, 5}, {3, 5},
        {6, 7}, {6, 9}, {7, 9}, {4, 7}, {5, 6}, {8, 9},
    };
    ClauseRepair best;
    best.changes = 11;
    std::array<int, 10> colors{};
    for (long code = 0; code < 59049; ++code) {
        long rest = code;
        for (int i = 0; i < 10; ++i) {
            colors[i] = rest % 3;
            rest /= 3;
        }
        if (colors[9] == 0) continue; // guard pendants are color 0
        bool ok = true;
        for (int s = 0; s < 4 && ok; ++s)
            if (colors[s] == neighbor_final[s]) ok = false;
        for (const auto& [u, v] : interior_edges) {
            if (!ok) break;
            if (colors[u] == colors[v]) ok = false;
        }
        if (!ok) continue;
        int changes = 0;
        for (int i = 0; i < 10; ++i) changes += colors[i] != current[i];
        if (changes < best.changes) {
            best.changes = changes;
            best.final_colors.assign(colors.begin(), colors.end());
        }
    }
    if (best.changes > 10) throw Error("clause gadget admits no proper completion");
    return best;
}

} // namespace

Certificate replay_crosscompose_certificate(const Cnf3Batch& batch, int sat_index,
                                            const std::vector<bool>& assignment,
                                            const ReductionOutput& target) {
    batch.validate();
    const int t = batch.t();
    const int n = batch.formulas[0].num_vars;
    const int m = static_cast<int>(batch.formulas[0].clauses.size());
    if (sat_index < 0 || sat_index >= t) throw WitnessInvalid("formula index out of range");
    if (static_cast<int>(assignment.size()) != n)
        throw WitnessInvalid("assignment must cover all " + std::to_string(n) + " variables");
    unsigned mask = 0;
    for (int i = 0; i < n; ++i)
        if (assignment[i]) mask |= 1u << i;
    for (const auto& clause : batch.formulas[sat_index].clauses)
        if (!clause_satisfied(clause, mask))
            throw WitnessInvalid("assignment does not satisfy the chosen formula");

    const auto& trace = target.trace;
    const int budget = target.instance.budget;
    Certificate cert;

    // spread propagation: push the root's conflict color down to the chosen leaf
    if (t > 1) {
        std::vector<int> path; // heap positions root..leaf
        for (int q = t + sat_index; q >= 1; q /= 2) path.push_back(q);
        std::reverse(path.begin(), path.end());
        for (size_t i = 0; i + 1 < path.size(); ++i) {
            int node = path[i];
            int child = path[i + 1];
            const auto& tri = trace.ids("spread_triangle(" + std::to_string(node) + ")");
            bool go_left = child == 2 * node;
            int side = go_left ? tri[1] : tri[2];
            cert.moves.push_back(RecolorMove{tri[0], go_left ? 2 : 1});
            cert.moves.push_back(RecolorMove{side, 0});
        }
    }
    int leaf = trace.ids("leaf(" + std::to_string(sat_index) + ")")[0];
    int selector_var = trace.ids("selector_variable(" + std::to_string(sat_index) + ")")[0];
    cert.moves.push_back(RecolorMove{leaf, 1});
    cert.moves.push_back(RecolorMove{selector_var, 0});

    // flip the variables the assignment sets false (the start is all-true)
    for (int i = 0; i < n; ++i) {
        if (assignment[i]) continue;
        const auto& pair =
            trace.ids("variable(" + std::to_string(sat_index) + "," + std::to_string(i) + ")");
        cert.moves.push_back(RecolorMove{pair[0], 0});
        cert.moves.push_back(RecolorMove{pair[1], 1});
    }

    // local clause repairs against the final literal colors
    for (int j = 0; j < m; ++j) {
        Clause lits = batch.formulas[sat_index].clauses[j];
        while (lits.size() < 3) lits.push_back(lits.back());
        std::array<int, 4> neighbor_final{};
        for (int s = 0; s < 3; ++s) {
            int var = std::abs(lits[s]) - 1;
            bool pos = lits[s] > 0;
            bool value = assignment[var];
            neighbor_final[s] = pos ? (value ? 1 : 0) : (value ? 0 : 1);
        }
        neighbor_final[3] = 0; // the selector variable ends false

        const auto& ids =
            trace.ids("clause(" + std::to_string(sat_index) + "," + std::to_string(j) + ")");
        std::array<int, 10> current{};
        for (int i = 0; i < 10; ++i) current[i] = target.instance.graph.color(ids[i]);
        ClauseRepair repair = repair_clause_gadget(current, neighbor_final);
        // the auxiliary vertex keeps its color, so a local repair never
        // touches more than the nine triangle vertices
        if (repair.changes > 9)
            throw Error("clause repair used " + std::to_string(repair.changes) +
                        " recolorings; the local bound is 9");
        for (int i = 0; i < 10; ++i)
            if (repair.final_colors[i] != current[i])
                cert.moves.push_back(RecolorMove{ids[i], repair.final_colors[i]});
    }

    if (cert.size() > budget)
        throw Error("replay used " + std::to_string(cert.size()) + " recolorings, budget is " +
                    std::to_string(budget));
    if (!is_proper(apply(target.instance.graph, cert)))
        throw Error("cross-composition replay did not reach a proper coloring");
    return cert;
}

// ---------------------------------------------------------------------------
// clause gadget properties

GadgetPropertyReport verify_gadget_p1_p2() {
    static const std::pair<int, int> interior_edges[] = {
        {0, 1}, {0, 4}, {1, 4}, {2, 3}, {2, 5}, {3, 5},
        {6, 7}, {6, 9}, {7, 9}, {4, 7}, {5, 6}, {8, 9},
    };
    GadgetPropertyReport report;
    report.p1_holds = true;
    report.p2_holds = true;
    std::array<int, 4> boundary{};
    std::array<int, 10> colors{};
    for (int bcode = 0; bcode < 81; ++bcode) {
        int rest = bcode;
        for (int i = 0; i < 4; ++i) {
            boundary[i] = rest % 3;
            rest /= 3;
        }
        ++report.boundaries_checked;
        bool all_zero = std::all_of(boundary.begin(), boundary.end(), [](int c) { return c == 0; });
        bool has_one = std::any_of(boundary.begin(), boundary.end(), [](int c) { return c == 1; });

        long proper_count = 0;
        bool every_guard_zero = true;
        bool exists_guard_nonzero = false;
        for (long code = 0; code < 59049; ++code) {
            long r2 = code;
            for (int i = 0; i < 10; ++i) {
                colors[i] = r2 % 3;
                r2 /= 3;
            }
            bool ok = true;
            for (int s = 0; s < 4 && ok; ++s)
                if (colors[s] == boundary[s]) ok = false;
            for (const auto& [u, v] : interior_edges) {
                if (!ok) break;
                if (colors[u] == colors[v]) ok = false;
            }
            if (!ok) continue;
            ++proper_count;
            if (colors[9] != 0) {
                every_guard_zero = false;
                exists_guard_nonzero = true;
            }
        }
        if (all_zero) {
            if (proper_count == 0 || !every_guard_zero) report.p1_holds = false;
        } else if (has_one) {
            ++report.p2_boundaries;
            if (!exists_guard_nonzero) report.p2_holds = false;
        } else {
            ++report.unclaimed_boundaries;
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// sweeps

std::string to_string(SweepFamily family) {
    switch (family) {
        case SweepFamily::prext_fix: return "prext-fix";
        case SweepFamily::prext_swap: return "prext-swap";
        case SweepFamily::indset_3swap: return "indset-3swap";
        case SweepFamily::planar_swap_promise: return "planar-swap-promise";
        case SweepFamily::planar_fix_promise: return "planar-fix-promise";
        case SweepFamily::cross_compose: return "cross-compose";
        case SweepFamily::promise_augment: return "promise-augment";
        case SweepFamily::gadget_p1p2: return "gadget-p1p2";
    }
    throw Error("unknown sweep family");
}

SweepFamily sweep_family_from_string(const std::string& name) {
    for (SweepFamily family :
         {SweepFamily::prext_fix, SweepFamily::prext_swap, SweepFamily::indset_3swap,
          SweepFamily::planar_swap_promise, SweepFamily::planar_fix_promise,
          SweepFamily::cross_compose, SweepFamily::promise_augment, SweepFamily::gadget_p1p2}) {
        if (to_string(family) == name) return family;
    }
    throw ValidationError("unknown sweep '" + name + "'");
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct SweepState {
    EquivalenceReport report;
    const SweepOptions& options;

    explicit SweepState(SweepFamily family, const SweepOptions& opts) : options(opts) {
        report.family = to_string(family);
        report.options = opts;
    }

    void record(EquivalenceRecord rec) {
        ++report.instances;
        if (!rec.agree) ++report.disagreements;
        if (options.record_all || !rec.agree) report.records.push_back(std::move(rec));
    }

    // caps tripped by one instance are recorded, not fatal
    template <typename Fn>
    void guarded(const std::string& source, Fn&& fn) {
        try {
            fn();
        } catch (const SearchCapExceeded& e) {
            skip(source, e.what());
        }
    }

    void skip(const std::string& source, const std::string& why) {
        ++report.instances;
        ++report.skipped;
        if (options.record_all) {
            EquivalenceRecord rec;
            rec.source = source;
            rec.agree = true;
            rec.note = "skipped: " + why;
            report.records.push_back(std::move(rec));
        }
    }
};

int pair_count(int n) {
    return n * (n - 1) / 2;
}

// edge masks are 64-bit; sources beyond 11 vertices would not fit
void check_sweep_size(int max_n) {
    if (max_n > 11)
        throw ValidationError("sweeps support sources up to 11 vertices");
}

std::vector<Edge> edges_from_mask(int n, std::uint64_t mask) {
    std::vector<Edge> edges;
    int bit = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v, ++bit)
            if (mask & (1ull << bit)) edges.emplace_back(u, v);
    return edges;
}

std::string describe_source(int n, std::uint64_t mask, const std::vector<int>& precoloring) {
    std::ostringstream os;
    os << "n=" << n << " edges=0x" << std::hex << mask << std::dec << " pre=";
    for (int c : precoloring) os << (c < 0 ? std::string(".") : std::to_string(c));
    return os.str();
}

// enumerate all precolorings on subsets of eligible vertices; skips improper
// ones against the edge set
template <typename Fn>
void for_each_precoloring(int n, const std::vector<Edge>& edges,
                          const std::vector<int>& eligible, bool require_nonempty, Fn&& fn) {
    int en = static_cast<int>(eligible.size());
    for (std::uint32_t wmask = 0; wmask < (1u << en); ++wmask) {
        if (require_nonempty && wmask == 0) continue;
        std::vector<int> members;
        for (int i = 0; i < en; ++i)
            if (wmask & (1u << i)) members.push_back(eligible[i]);
        int wn = static_cast<int>(members.size());
        long combos = 1;
        for (int i = 0; i < wn; ++i) combos *= 3;
        for (long code = 0; code < combos; ++code) {
            std::vector<int> pre(n, PrExtInstance::kUncolored);
            long rest = code;
            for (int i = 0; i < wn; ++i) {
                pre[members[i]] = static_cast<int>(rest % 3);
                rest /= 3;
            }
            bool improper = false;
            for (const auto& [u, v] : edges)
                if (pre[u] != PrExtInstance::kUncolored && pre[u] == pre[v]) {
                    improper = true;
                    break;
                }
            if (improper) continue;
            fn(pre);
        }
    }
}

void run_prext_instance(SweepState& state, bool swap_variant, int n, std::uint64_t mask,
                        const std::vector<Edge>& edges, const std::vector<int>& pre) {
    state.guarded(describe_source(n, mask, pre), [&] {
    auto start = Clock::now();
    PrExtInstance src{n, edges, 3, pre};
    bool expected = oracle_prext(src);
    ReductionOutput out = swap_variant ? prext_to_swap(src) : prext_to_fix(src);
    bool got;
    if (swap_variant)
        got = swap_search(out.instance.graph, out.instance.budget).decision;
    else
        got = fix_branch(out.instance.graph, out.instance.budget).decision;
    EquivalenceRecord rec;
    rec.source = describe_source(n, mask, pre);
    rec.source_yes = expected;
    rec.target_yes = got;
    rec.agree = expected == got;
    rec.millis = ms_since(start);
    state.record(std::move(rec));
    });
}

// seeded random bipartite structure; retries until two-colorable
std::pair<std::uint64_t, std::vector<Edge>> draw_bipartite(std::mt19937_64& rng, int n) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::uint64_t mask =
            pair_count(n) == 0 ? 0 : rng() % (1ull << pair_count(n));
        auto edges = edges_from_mask(n, mask);
        if (is_bipartite(ColoredGraph(n, 3, edges, std::vector<int>(n, 0)))) return {mask, edges};
    }
    return {0, {}};
}

// random proper precoloring over an eligible vertex set
std::vector<int> draw_precoloring(std::mt19937_64& rng, int n, const std::vector<Edge>& edges,
                                  const std::vector<int>& eligible, bool require_nonempty) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<int> pre(n, PrExtInstance::kUncolored);
        for (int v : eligible)
            if (rng() % 100 < 40) pre[v] = static_cast<int>(rng() % 3);
        bool improper = false;
        bool empty = true;
        for (int v : eligible) empty = empty && pre[v] == PrExtInstance::kUncolored;
        for (const auto& [u, v] : edges)
            if (pre[u] != PrExtInstance::kUncolored && pre[u] == pre[v]) improper = true;
        if (improper || (require_nonempty && empty)) continue;
        return pre;
    }
    std::vector<int> pre(n, PrExtInstance::kUncolored);
    if (require_nonempty && !eligible.empty()) pre[eligible[0]] = 0;
    return pre;
}

void sweep_prext(SweepState& state, bool swap_variant) {
    if (state.options.sample > 0) {
        std::mt19937_64 rng(state.options.seed);
        for (int i = 0; i < state.options.sample; ++i) {
            int n = 1 + static_cast<int>(rng() % std::max(1, state.options.max_n));
            auto [mask, edges] = draw_bipartite(rng, n);
            std::vector<int> all(n);
            std::iota(all.begin(), all.end(), 0);
            auto pre = draw_precoloring(rng, n, edges, all, false);
            run_prext_instance(state, swap_variant, n, mask, edges, pre);
        }
        return;
    }
    for (int n = 0; n <= state.options.max_n; ++n) {
        for (std::uint64_t mask = 0; mask < (1ull << pair_count(n)); ++mask) {
            auto edges = edges_from_mask(n, mask);
            ColoredGraph structure(n, 3, edges, std::vector<int>(n, 0));
            if (!is_bipartite(structure)) continue;
            std::vector<int> all(n);
            std::iota(all.begin(), all.end(), 0);
            for_each_precoloring(n, edges, all, false, [&](const std::vector<int>& pre) {
                run_prext_instance(state, swap_variant, n, mask, edges, pre);
            });
        }
    }
}

void run_indset_instance(SweepState& state, int n, std::uint64_t mask,
                         const std::vector<Edge>& edges, int k) {
    state.guarded("n=" + std::to_string(n) + " k=" + std::to_string(k), [&] {
    auto start = Clock::now();
    IndSetInstance src{n, edges, k};
    auto witness = indset_witness(src);
    ReductionOutput out = indset_to_3swap(src);
    std::ostringstream desc;
    desc << "n=" << n << " edges=0x" << std::hex << mask << std::dec << " k=" << k;

    EquivalenceRecord rec;
    rec.source = desc.str();
    rec.source_yes = witness.has_value();
    if (witness) {
        Certificate cert = replay_indset_certificate(src, *witness, out);
        rec.target_yes = cert.size() == 2 * k; // replay validated properness
        rec.agree = rec.target_yes;
        if (!rec.agree) rec.note = "replay length != 2k";
    } else if (out.instance.budget <= state.options.search_budget_cap) {
        rec.target_yes = swap_search(out.instance.graph, out.instance.budget).decision;
        rec.agree = !rec.target_yes;
        if (!rec.agree) rec.note = "bounded search repaired a NO instance";
    } else {
        state.skip(rec.source, "budget above search cap");
        return;
    }
    rec.millis = ms_since(start);
    state.record(std::move(rec));
    });
}

void sweep_indset(SweepState& state) {
    if (state.options.sample > 0) {
        std::mt19937_64 rng(state.options.seed);
        for (int i = 0; i < state.options.sample; ++i) {
            int n = 1 + static_cast<int>(rng() % std::max(1, state.options.max_n));
            std::uint64_t mask =
                pair_count(n) == 0 ? 0 : rng() % (1ull << pair_count(n));
            int k = 1 + static_cast<int>(rng() % std::max(1, std::min(n, state.options.max_k)));
            run_indset_instance(state, n, mask, edges_from_mask(n, mask), k);
        }
        return;
    }
    for (int n = 0; n <= state.options.max_n; ++n) {
        for (std::uint64_t mask = 0; mask < (1ull << pair_count(n)); ++mask) {
            auto edges = edges_from_mask(n, mask);
            int kmax = std::min(n, state.options.max_k);
            for (int k = 1; k <= kmax; ++k) run_indset_instance(state, n, mask, edges, k);
        }
    }
}

void run_planar_instance(SweepState& state, bool fix_variant, int n, std::uint64_t mask,
                         const std::vector<Edge>& edges, const std::vector<int>& pre) {
    state.guarded(describe_source(n, mask, pre), [&] {
    auto start = Clock::now();
    PrExtInstance src{n, edges, 3, pre};
    bool expected = oracle_prext(src);
    ReductionOutput out =
        fix_variant ? prext_to_planar_fix_promise(src) : prext_to_planar_swap_promise(src);
    const auto& g = out.instance.graph;
    SearchLimits local = state.options.limits;
    local.chromatic_cap = std::max(local.chromatic_cap, g.n());

    bool got = fix_variant ? fix_branch(g, out.instance.budget).decision
                           : swap_search(g, out.instance.budget).decision;
    PromiseDiagnosis diag = promise_check(out.instance, local);

    ReductionOutput stripped = strip_promise_bipartite(out);
    bool strip_bipartite = is_bipartite(stripped.instance.graph);
    bool strip_bound = planarity_bound_check(stripped.instance.graph);
    bool strip_got =
        fix_variant ? fix_branch(stripped.instance.graph, stripped.instance.budget).decision
                    : swap_search(stripped.instance.graph, stripped.instance.budget).decision;

    EquivalenceRecord rec;
    rec.source = describe_source(n, mask, pre);
    rec.source_yes = expected;
    rec.target_yes = got;
    rec.agree = expected == got && diag.holds && strip_bipartite && strip_bound &&
                expected == strip_got;
    if (!diag.holds) rec.note += "promise check failed (" + diag.describe() + "); ";
    if (!strip_bipartite) rec.note += "stripped output not bipartite; ";
    if (!strip_bound) rec.note += "stripped output violates the edge bound; ";
    if (expected != strip_got) rec.note += "stripped decision differs; ";
    rec.millis = ms_since(start);
    state.record(std::move(rec));
    });
}

std::vector<int> degree_one_vertices(int n, const std::vector<Edge>& edges) {
    std::vector<int> degree(n, 0);
    for (const auto& [u, v] : edges) {
        ++degree[u];
        ++degree[v];
    }
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (degree[v] == 1) out.push_back(v);
    return out;
}

void sweep_planar(SweepState& state, bool fix_variant) {
    if (state.options.sample > 0) {
        std::mt19937_64 rng(state.options.seed);
        for (int i = 0; i < state.options.sample; ++i) {
            int n = std::max(2, 1 + static_cast<int>(rng() % std::max(1, state.options.max_n)));
            std::uint32_t mask = 0;
            std::vector<Edge> edges;
            std::vector<int> eligible;
            for (int attempt = 0; attempt < 1000 && eligible.empty(); ++attempt) {
                std::tie(mask, edges) = draw_bipartite(rng, n);
                eligible = degree_one_vertices(n, edges);
            }
            if (eligible.empty()) continue;
            auto pre = draw_precoloring(rng, n, edges, eligible, true);
            run_planar_instance(state, fix_variant, n, mask, edges, pre);
        }
        return;
    }
    for (int n = 0; n <= state.options.max_n; ++n) {
        for (std::uint64_t mask = 0; mask < (1ull << pair_count(n)); ++mask) {
            auto edges = edges_from_mask(n, mask);
            ColoredGraph structure(n, 3, edges, std::vector<int>(n, 0));
            if (!is_bipartite(structure)) continue;
            std::vector<int> degree_one = degree_one_vertices(n, edges);
            if (degree_one.empty()) continue;
            for_each_precoloring(n, edges, degree_one, true, [&](const std::vector<int>& pre) {
                run_planar_instance(state, fix_variant, n, mask, edges, pre);
            });
        }
    }
}

void run_augment_instance(SweepState& state, int n, std::uint64_t mask,
                          const std::vector<Edge>& edges, int k) {
    state.guarded("n=" + std::to_string(n) + " k=" + std::to_string(k), [&] {
    auto start = Clock::now();
    IndSetInstance src{n, edges, k};
    ReductionOutput base = indset_to_3swap(src);
    ReductionOutput aug = promise_augment(base, n, k);
    SearchLimits local = state.options.limits;
    local.chromatic_cap = std::max(local.chromatic_cap, aug.instance.graph.n());
    PromiseDiagnosis diag = promise_check(aug.instance, local);

    EquivalenceRecord rec;
    std::ostringstream desc;
    desc << "n=" << n << " edges=0x" << std::hex << mask << std::dec << " k=" << k;
    rec.source = desc.str();
    rec.source_yes = oracle_indset(src);
    rec.target_yes = rec.source_yes;
    rec.agree = diag.holds;
    if (!diag.holds) rec.note = diag.describe();

    // decision preservation, exhaustively checkable at k = 1
    if (k == 1 && 2 * k <= state.options.search_budget_cap) {
        bool base_dec = swap_search(base.instance.graph, base.instance.budget).decision;
        bool aug_dec = swap_search(aug.instance.graph, aug.instance.budget).decision;
        rec.target_yes = aug_dec;
        if (base_dec != aug_dec || aug_dec != rec.source_yes) {
            rec.agree = false;
            rec.note += " augmentation changed the decision";
        }
    }
    rec.millis = ms_since(start);
    state.record(std::move(rec));
    });
}

void sweep_promise_augment(SweepState& state) {
    if (state.options.sample > 0) {
        std::mt19937_64 rng(state.options.seed);
        for (int i = 0; i < state.options.sample; ++i) {
            int n = 1 + static_cast<int>(rng() % std::max(1, state.options.max_n));
            std::uint64_t mask =
                pair_count(n) == 0 ? 0 : rng() % (1ull << pair_count(n));
            int k = 1 + static_cast<int>(rng() % std::max(1, std::min(n, state.options.max_k)));
            run_augment_instance(state, n, mask, edges_from_mask(n, mask), k);
        }
        return;
    }
    for (int n = 1; n <= state.options.max_n; ++n) {
        for (std::uint64_t mask = 0; mask < (1ull << pair_count(n)); ++mask) {
            auto edges = edges_from_mask(n, mask);
            int kmax = std::min(n, state.options.max_k);
            for (int k = 1; k <= kmax; ++k) run_augment_instance(state, n, mask, edges, k);
        }
    }
}

Cnf3Batch budget_batch(int t, int n, int m) {
    // one unsatisfiable formula first, satisfiable fillers after
    Cnf3Batch batch;
    Cnf3Formula unsat;
    unsat.num_vars = n;
    unsat.clauses.push_back({1});
    unsat.clauses.push_back({-1});
    while (static_cast<int>(unsat.clauses.size()) < m) unsat.clauses.push_back({1, -1});
    Cnf3Formula sat;
    sat.num_vars = n;
    for (int j = 0; j < m; ++j) {
        Clause clause;
        for (int i = 0; i < std::min(3, n); ++i) {
            int var = (j + i) % n + 1;
            clause.push_back((j + i) % 2 == 0 ? var : -var);
        }
        sat.clauses.push_back(clause);
    }
    batch.formulas.push_back(unsat);
    while (batch.t() < t) batch.formulas.push_back(sat);
    return batch;
}

void sweep_cross_compose(SweepState& state) {
    struct Scenario {
        int t, n, m;
    };
    for (const Scenario& sc : {Scenario{1, 1, 1}, Scenario{2, 3, 2}, Scenario{4, 4, 3}}) {
        auto start = Clock::now();
        Cnf3Batch batch;
        if (sc.t == 1) {
            Cnf3Formula f;
            f.num_vars = 1;
            f.clauses.push_back({1});
            batch.formulas.push_back(f);
        } else {
            batch = budget_batch(sc.t, sc.n, sc.m);
        }
        ReductionOutput out = cross_compose(batch);
        int lg = 0;
        while ((1 << lg) < sc.t) ++lg;
        int expected_budget = 2 * lg + 2 * batch.formulas[0].num_vars +
                              9 * static_cast<int>(batch.formulas[0].clauses.size());

        EquivalenceRecord rec;
        rec.source = "t=" + std::to_string(sc.t) + " n=" + std::to_string(batch.formulas[0].num_vars) +
                     " m=" + std::to_string(batch.formulas[0].clauses.size());
        bool any_sat = false;
        int sat_index = -1;
        std::vector<bool> assignment;
        for (int h = 0; h < batch.t(); ++h) {
            if (auto w = sat_witness(batch.formulas[h])) {
                any_sat = true;
                sat_index = h;
                assignment = *w;
                break;
            }
        }
        rec.source_yes = any_sat;
        rec.agree = out.instance.budget == expected_budget;
        if (!rec.agree) rec.note = "budget differs from the size formula";

        // initial conflicts must be exactly the root pendant edges
        auto confl = conflicts(out.instance.graph);
        int root = sc.t == 1 ? out.trace.ids("leaf(0)")[0] : out.trace.ids("spread_triangle(1)")[0];
        std::vector<Edge> expected_confl;
        for (int p : out.trace.ids("spread_root_pendants"))
            expected_confl.emplace_back(std::min(root, p), std::max(root, p));
        std::sort(expected_confl.begin(), expected_confl.end());
        if (confl != expected_confl) {
            rec.agree = false;
            rec.note += " initial conflicts are not exactly the root pendants;";
        }

        if (any_sat) {
            Certificate cert =
                replay_crosscompose_certificate(batch, sat_index, assignment, out);
            rec.target_yes = true;
            if (cert.size() > out.instance.budget) {
                rec.agree = false;
                rec.note += " replay exceeded the budget;";
            }
        }
        rec.millis = ms_since(start);
        state.record(std::move(rec));
    }

    // NO direction, structurally: with every formula unsatisfiable, every
    // assignment leaves some clause gadget in the guard-forcing state of P1
    {
        auto start = Clock::now();
        Cnf3Batch batch;
        Cnf3Formula unsat;
        unsat.num_vars = 1;
        unsat.clauses.push_back({1});
        unsat.clauses.push_back({-1});
        batch.formulas = {unsat, unsat};
        ReductionOutput out = cross_compose(batch);
        EquivalenceRecord rec;
        rec.source = "t=2 all-unsat";
        rec.source_yes = false;
        bool all_unsat = true;
        bool forcing = true;
        for (const auto& f : batch.formulas) {
            if (oracle_3sat(f)) all_unsat = false;
            // with the selector variable false, some clause must go all-false
            for (unsigned mask = 0; mask < (1u << f.num_vars); ++mask) {
                bool some_clause_all_false = false;
                for (const auto& clause : f.clauses)
                    if (!clause_satisfied(clause, mask)) some_clause_all_false = true;
                if (!some_clause_all_false) forcing = false;
            }
        }
        GadgetPropertyReport gadget = verify_gadget_p1_p2();
        rec.target_yes = !(all_unsat && forcing && gadget.p1_holds);
        rec.agree = all_unsat && forcing && gadget.p1_holds && out.instance.budget > 0;
        if (!rec.agree) rec.note = "structural NO evidence incomplete";
        rec.millis = ms_since(start);
        state.record(std::move(rec));
    }
}

void sweep_gadget(SweepState& state) {
    auto start = Clock::now();
    GadgetPropertyReport report = verify_gadget_p1_p2();
    EquivalenceRecord rec;
    rec.source = "isolated clause gadget, all 81 boundaries";
    rec.source_yes = true;
    rec.target_yes = report.passed();
    rec.agree = report.passed();
    if (!report.p1_holds) rec.note += "P1 failed; ";
    if (!report.p2_holds) rec.note += "P2 failed; ";
    rec.millis = ms_since(start);
    state.record(std::move(rec));
}

} // namespace

EquivalenceReport run_sweep(SweepFamily family, const SweepOptions& options) {
    check_sweep_size(options.max_n);
    SweepState state(family, options);
    switch (family) {
        case SweepFamily::prext_fix: sweep_prext(state, false); break;
        case SweepFamily::prext_swap: sweep_prext(state, true); break;
        case SweepFamily::indset_3swap: sweep_indset(state); break;
        case SweepFamily::planar_swap_promise: sweep_planar(state, false); break;
        case SweepFamily::planar_fix_promise: sweep_planar(state, true); break;
        case SweepFamily::cross_compose: sweep_cross_compose(state); break;
        case SweepFamily::promise_augment: sweep_promise_augment(state); break;
        case SweepFamily::gadget_p1p2: sweep_gadget(state); break;
    }
    return state.report;
}

std::string summarize(const EquivalenceReport& report) {
    std::ostringstream os;
    os << report.family << ": " << report.instances << " instances, "
       << report.disagreements << " disagreements, " << report.skipped << " skipped";
    if (!report.records.empty() && report.disagreements > 0) {
        os << "\nfirst failures:";
        int shown = 0;
        for (const auto& rec : report.records) {
            if (rec.agree) continue;
            os << "\n  " << rec.source << ": oracle=" << (rec.source_yes ? "yes" : "no")
               << " target=" << (rec.target_yes ? "yes" : "no");
            if (!rec.note.empty()) os << " (" << rec.note << ")";
            if (++shown == 10) break;
        }
    }
    return os.str();
}

} // namespace recolor
