#include "doctest.h"

#include <random>

#include "recolor/corpus.hpp"
#include "recolor/io.hpp"
#include "recolor/reductions.hpp"
#include "recolor/verify.hpp"
#include "test_util.hpp"

using namespace recolor;

namespace {

PrExtInstance star_k13() {
    // center uncolored, three leaves precolored 0, 1, 2: not extendable
    PrExtInstance src;
    src.n = 4;
    src.edges = {{0, 1}, {0, 2}, {0, 3}};
    src.r = 3;
    src.precoloring = {PrExtInstance::kUncolored, 0, 1, 2};
    return src;
}

} // namespace

TEST_CASE("prext_to_fix: pendant counts follow (r-1)(k'+1)") {
    // single edge, one precolored endpoint
    PrExtInstance src;
    src.n = 2;
    src.edges = {{0, 1}};
    src.r = 3;
    src.precoloring = {PrExtInstance::kUncolored, 0};
    auto out = prext_to_fix(src);
    CHECK(out.instance.budget == 1);
    CHECK(out.instance.variant == Variant::fix);
    // w gains 2*2 = 4 pendants: two of color 1, two of color 2
    const auto& pendants = out.trace.ids("lock_pendants(1)");
    CHECK(pendants.size() == 4);
    int ones = 0;
    int twos = 0;
    for (int p : pendants) {
        ones += out.instance.graph.color(p) == 1;
        twos += out.instance.graph.color(p) == 2;
    }
    CHECK(ones == 2);
    CHECK(twos == 2);
    check_trace_covers(out.trace, out.instance.graph.n());
}

TEST_CASE("prext_to_fix with W = V: budget 0, YES iff the precoloring is proper") {
    PrExtInstance src;
    src.n = 3;
    src.edges = {{0, 1}, {1, 2}};
    src.r = 3;
    src.precoloring = {0, 1, 0};
    auto out = prext_to_fix(src);
    CHECK(out.instance.budget == 0);
    // each precolored vertex still carries r-1 locking pendants
    CHECK(out.instance.graph.n() == 3 + 3 * 2);
    CHECK(is_proper(out.instance.graph));
    CHECK(fix_branch(out.instance.graph, 0).decision);
}

TEST_CASE("prext_to_swap adds r*k' free vertices, k' per color") {
    PrExtInstance src;
    src.n = 3;
    src.edges = {{0, 1}};
    src.r = 3;
    src.precoloring = {0, PrExtInstance::kUncolored, PrExtInstance::kUncolored};
    auto out = prext_to_swap(src);
    CHECK(out.instance.budget == 2);
    CHECK(out.instance.variant == Variant::swap);
    for (int c = 0; c < 3; ++c) {
        const auto& free = out.trace.ids("free_color(" + std::to_string(c) + ")");
        CHECK(free.size() == 2);
        for (int v : free) {
            CHECK(out.instance.graph.degree(v) == 0);
            CHECK(out.instance.graph.color(v) == c);
        }
    }

    // with k' = 0 the swap output matches the fix output up to the variant
    PrExtInstance full;
    full.n = 2;
    full.edges = {{0, 1}};
    full.r = 3;
    full.precoloring = {0, 1};
    auto fix_out = prext_to_fix(full);
    auto swap_out = prext_to_swap(full);
    CHECK(swap_out.instance.graph.n() == fix_out.instance.graph.n());
    CHECK(swap_out.instance.graph.edges() == fix_out.instance.graph.edges());
    CHECK(swap_out.instance.graph.coloring() == fix_out.instance.graph.coloring());
    CHECK(swap_out.instance.variant == Variant::swap);
}

TEST_CASE("prext generators reject improper precolorings") {
    PrExtInstance src;
    src.n = 2;
    src.edges = {{0, 1}};
    src.r = 3;
    src.precoloring = {0, 0};
    CHECK_THROWS_AS(prext_to_fix(src), ValidationError);
    CHECK_THROWS_AS(oracle_prext(src), ValidationError);
}

TEST_CASE("prext equivalence on hand-picked instances") {
    auto star = star_k13();
    CHECK_FALSE(oracle_prext(star));
    auto fix_out = prext_to_fix(star);
    CHECK_FALSE(fix_branch(fix_out.instance.graph, fix_out.instance.budget).decision);
    auto swap_out = prext_to_swap(star);
    CHECK_FALSE(swap_search(swap_out.instance.graph, swap_out.instance.budget).decision);

    PrExtInstance yes;
    yes.n = 3;
    yes.edges = {{0, 1}, {1, 2}};
    yes.r = 3;
    yes.precoloring = {0, PrExtInstance::kUncolored, 2};
    CHECK(oracle_prext(yes));
    auto out = prext_to_fix(yes);
    CHECK(fix_branch(out.instance.graph, out.instance.budget).decision);
    auto sw = prext_to_swap(yes);
    CHECK(swap_search(sw.instance.graph, sw.instance.budget).decision);
}

TEST_CASE("indset_to_3swap: size formula and initial conflicts") {
    IndSetInstance src;
    src.n = 4;
    src.edges = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
    src.k = 2;
    auto out = indset_to_3swap(src);
    CHECK(out.instance.graph.n() == 82);
    CHECK(out.instance.budget == 4);
    CHECK(out.instance.variant == Variant::swap);
    // the only initial conflicts sit inside the k conflict triangles
    auto confl = conflicts(out.instance.graph);
    CHECK(confl.size() == 2);
    for (int j = 0; j < 2; ++j) {
        const auto& tri = out.trace.ids("conflict_triangle(" + std::to_string(j) + ")");
        CHECK(std::find(confl.begin(), confl.end(),
                        Edge{std::min(tri[1], tri[2]), std::max(tri[1], tri[2])}) != confl.end());
    }
    check_trace_covers(out.trace, out.instance.graph.n());

    auto sizes = color_class_sizes(out.instance.graph);
    CHECK(sizes[0] + sizes[1] + sizes[2] == out.instance.graph.n());
}

TEST_CASE("indset_to_3swap: witness replay uses exactly 2k swaps") {
    IndSetInstance src;
    src.n = 4;
    src.edges = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
    src.k = 2;
    auto witness = indset_witness(src);
    REQUIRE(witness.has_value());
    auto out = indset_to_3swap(src);
    auto cert = replay_indset_certificate(src, *witness, out);
    CHECK(cert.size() == 4);
    CHECK(is_proper(apply(out.instance.graph, cert)));

    CHECK_THROWS_AS(replay_indset_certificate(src, {0, 1}, out), WitnessInvalid);
    CHECK_THROWS_AS(replay_indset_certificate(src, {0}, out), WitnessInvalid);
}

TEST_CASE("indset_to_3swap on K3: YES at k=1, NO at k=2") {
    IndSetInstance k3;
    k3.n = 3;
    k3.edges = {{0, 1}, {0, 2}, {1, 2}};

    k3.k = 1;
    CHECK(oracle_indset(k3));
    auto yes_out = indset_to_3swap(k3);
    CHECK(yes_out.instance.budget == 2);
    CHECK(swap_search(yes_out.instance.graph, 2).decision);

    k3.k = 2;
    CHECK_FALSE(oracle_indset(k3));
    auto no_out = indset_to_3swap(k3);
    CHECK(no_out.instance.budget == 4);
    CHECK_FALSE(swap_search(no_out.instance.graph, 4).decision);
}

TEST_CASE("lift_to_r: clique arithmetic and preserved decisions") {
    IndSetInstance src;
    src.n = 2;
    src.edges = {{0, 1}};
    src.k = 1;
    auto out = indset_to_3swap(src);
    CHECK_THROWS_AS(lift_to_r(out.instance, 3), InvalidTarget);
    CHECK_THROWS_AS(lift_to_r(out.instance, 2), InvalidTarget);

    auto lifted = lift_to_r(out, 4);
    CHECK(lifted.instance.graph.n() == out.instance.graph.n() + 4);
    CHECK(lifted.instance.graph.m() == out.instance.graph.m() + 6);
    CHECK(lifted.instance.graph.r() == 4);
    check_trace_covers(lifted.trace, lifted.instance.graph.n());

    CHECK(swap_search(out.instance.graph, out.instance.budget).decision ==
          swap_search(lifted.instance.graph, lifted.instance.budget).decision);
}

TEST_CASE("promise_augment: star shape, promise holds, decision preserved") {
    IndSetInstance src;
    src.n = 3;
    src.edges = {{0, 1}};
    src.k = 2;
    auto base = indset_to_3swap(src);
    auto aug = promise_augment(base, src.n, src.k);
    CHECK(aug.instance.promise);
    // each subdivided star: 1 + (k+1) + (k+1) = 7 vertices, 6 edges
    const auto& star = aug.trace.ids("star(0)");
    CHECK(star.size() == 7);
    CHECK(aug.instance.graph.n() == base.instance.graph.n() + 3 * 7 + 3);

    SearchLimits limits;
    limits.chromatic_cap = aug.instance.graph.n();
    CHECK(promise_check(aug.instance, limits).holds);

    auto params = indset_trace_params(base.trace);
    CHECK(params.first == 3);
    CHECK(params.second == 2);
}

TEST_CASE("cross_compose: budget formula and initial conflict discipline") {
    Cnf3Batch batch;
    Cnf3Formula f1;
    f1.num_vars = 3;
    f1.clauses = {{1, 2, 3}, {-1, -2, -3}};
    Cnf3Formula f2;
    f2.num_vars = 3;
    f2.clauses = {{1, -2, 3}, {-1, 2, 3}};
    batch.formulas = {f1, f2};

    auto out = cross_compose(batch);
    CHECK(out.instance.budget == 2 * 1 + 2 * 3 + 9 * 2); // 26
    CHECK(out.instance.variant == Variant::fix);
    check_trace_covers(out.trace, out.instance.graph.n());

    // the only initial conflicts are the root's pendant edges
    auto confl = conflicts(out.instance.graph);
    CHECK(static_cast<int>(confl.size()) == out.instance.budget + 1);
    int root = out.trace.ids("spread_triangle(1)")[0];
    for (const auto& [u, v] : confl) CHECK((u == root || v == root));
}

TEST_CASE("cross_compose: replay stays within budget and selects a satisfiable leaf") {
    Cnf3Batch batch;
    Cnf3Formula unsat;
    unsat.num_vars = 2;
    unsat.clauses = {{1}, {-1}};
    Cnf3Formula sat;
    sat.num_vars = 2;
    sat.clauses = {{1, 2}, {-1, -2}};
    batch.formulas = {unsat, sat};

    auto out = cross_compose(batch);
    auto assignment = sat_witness(sat);
    REQUIRE(assignment.has_value());
    auto cert = replay_crosscompose_certificate(batch, 1, *assignment, out);
    CHECK(cert.size() <= out.instance.budget);
    CHECK(is_proper(apply(out.instance.graph, cert)));

    CHECK_THROWS_AS(replay_crosscompose_certificate(batch, 0, {false, false}, out),
                    WitnessInvalid);
}

TEST_CASE("cross_compose replays bound clause-local work by 9 across random batches") {
    std::mt19937_64 rng(61);
    for (int iter = 0; iter < 20; ++iter) {
        int t = 1 << (rng() % 3);
        int vars = 2 + static_cast<int>(rng() % 3);
        int clauses = 1 + static_cast<int>(rng() % 3);
        auto batch = random_cnf3batch(rng, t, vars, clauses);
        int sat_index = -1;
        std::vector<bool> assignment;
        for (int h = 0; h < t && sat_index < 0; ++h)
            if (auto w = sat_witness(batch.formulas[h])) {
                sat_index = h;
                assignment = *w;
            }
        if (sat_index < 0) continue;
        auto out = cross_compose(batch);
        // the replay itself enforces the per-clause bound and the budget
        auto cert = replay_crosscompose_certificate(batch, sat_index, assignment, out);
        CHECK(cert.size() <= out.instance.budget);
        CHECK(is_proper(apply(out.instance.graph, cert)));
    }
}

TEST_CASE("cross_compose: t = 1 degenerates to a single-formula reduction") {
    Cnf3Batch batch;
    Cnf3Formula f;
    f.num_vars = 1;
    f.clauses = {{1}};
    batch.formulas = {f};
    auto out = cross_compose(batch);
    CHECK(out.instance.budget == 2 * 0 + 2 * 1 + 9 * 1);
    auto assignment = sat_witness(f);
    auto cert = replay_crosscompose_certificate(batch, 0, *assignment, out);
    CHECK(cert.size() <= out.instance.budget);
    CHECK(is_proper(apply(out.instance.graph, cert)));
}

TEST_CASE("cross_compose: r >= 4 pins every base vertex with pendant fans") {
    Cnf3Batch batch;
    Cnf3Formula f;
    f.num_vars = 1;
    f.clauses = {{1}};
    batch.formulas = {f};
    auto base = cross_compose(batch, 3);
    auto lifted = cross_compose(batch, 4);
    int k = base.instance.budget;
    CHECK(lifted.instance.budget == k);
    CHECK(lifted.instance.graph.r() == 4);
    CHECK(lifted.instance.graph.n() ==
          base.instance.graph.n() + base.instance.graph.n() * (k + 1));
    check_trace_covers(lifted.trace, lifted.instance.graph.n());
}

TEST_CASE("cross_compose at r = 4: replay still lands within budget") {
    Cnf3Batch batch;
    Cnf3Formula f;
    f.num_vars = 1;
    f.clauses = {{1}};
    batch.formulas = {f};
    auto out = cross_compose(batch, 4);
    auto assignment = sat_witness(f);
    auto cert = replay_crosscompose_certificate(batch, 0, *assignment, out);
    CHECK(cert.size() <= out.instance.budget);
    CHECK(is_proper(apply(out.instance.graph, cert)));
}

TEST_CASE("planar swap outputs are repairable with adjacent swaps within budget") {
    // the swap-variant construction places every needed foreign color on a
    // pendant of the vertex that must change
    PrExtInstance src;
    src.n = 2;
    src.edges = {{0, 1}};
    src.r = 3;
    src.precoloring = {PrExtInstance::kUncolored, 1};
    auto out = prext_to_planar_swap_promise(src);
    REQUIRE(oracle_prext(src));
    auto res = adjacent_swap_optimum(out.instance.graph);
    REQUIRE_FALSE(res.optimum->is_unreachable());
    CHECK(res.optimum->value() <= out.instance.budget);
    CHECK(is_proper(apply(out.instance.graph, *res.certificate, true)));

    PrExtInstance bigger;
    bigger.n = 3;
    bigger.edges = {{0, 1}, {0, 2}};
    bigger.r = 3;
    bigger.precoloring = {PrExtInstance::kUncolored, 0, 1};
    auto out2 = prext_to_planar_swap_promise(bigger);
    REQUIRE(oracle_prext(bigger));
    SwapSearchOptions opts;
    opts.adjacent_only = true;
    CHECK(swap_search(out2.instance.graph, out2.instance.budget, opts).decision);
}

TEST_CASE("cross_compose validates batch shape") {
    Cnf3Formula f;
    f.num_vars = 2;
    f.clauses = {{1, 2}};
    Cnf3Batch three;
    three.formulas = {f, f, f};
    CHECK_THROWS_AS(cross_compose(three), BatchShapeMismatch);

    Cnf3Formula other;
    other.num_vars = 3;
    other.clauses = {{1, 2}};
    Cnf3Batch mixed;
    mixed.formulas = {f, other};
    CHECK_THROWS_AS(cross_compose(mixed), BatchShapeMismatch);
}

TEST_CASE("frozen clause gadget table matches a fresh constraint search") {
    for (int pattern = 0; pattern < 8; ++pattern) {
        bool neg1 = pattern & 1;
        bool neg2 = pattern & 2;
        bool neg3 = pattern & 4;
        bool found = false;
        std::array<int, 10> expected{};
        for (long code = 0; code < 19683 * 27 && !found; ++code) {
            // order a,b,c,y1,y2,y3,y4,y5,r with d fixed to 0
            int digits[9];
            long rest = code;
            for (int i = 8; i >= 0; --i) {
                digits[i] = static_cast<int>(rest % 3);
                rest /= 3;
            }
            int a = digits[0], b = digits[1], c = digits[2];
            int y1 = digits[3], y2 = digits[4], y3 = digits[5];
            int y4 = digits[6], y5 = digits[7], r = digits[8];
            const int d = 0;
            if (a == (neg1 ? 0 : 1) || b == (neg2 ? 0 : 1) || c == (neg3 ? 0 : 1)) continue;
            if (a == b || a == y1 || b == y1) continue;
            if (c == d || c == y2 || d == y2) continue;
            if (y3 == y4 || y3 == r || y4 == r) continue;
            if (y1 == y4 || y2 == y3 || y5 == r || r == 0) continue;
            expected = {a, b, c, d, y1, y2, y3, y4, y5, r};
            found = true;
        }
        REQUIRE(found);
        CHECK(gadget::clause_initial_colors(pattern) == expected);
    }
}

TEST_CASE("planar promise generators: structure") {
    // one uncolored vertex with a single precolored neighbor
    PrExtInstance src;
    src.n = 2;
    src.edges = {{0, 1}};
    src.r = 3;
    src.precoloring = {PrExtInstance::kUncolored, 1};

    auto sw = prext_to_planar_swap_promise(src);
    CHECK(sw.instance.budget == 1);
    CHECK(sw.instance.variant == Variant::swap);
    CHECK(sw.instance.promise);
    // w sits on side B with color 1 (the unlocked case, no s' chain):
    // n + 2|X| + |W|*2(h+1) + 2 = 2 + 2 + 4 + 2
    CHECK(sw.instance.graph.n() == 10);
    check_trace_covers(sw.trace, sw.instance.graph.n());

    // the uncolored vertex starts at its neighbor's color and owns companions
    CHECK(sw.instance.graph.color(0) == 1);
    const auto& comp = sw.trace.ids("companions(0)");
    CHECK(sw.instance.graph.color(comp[0]) == 2);
    CHECK(sw.instance.graph.color(comp[1]) == 0);
    CHECK(sw.instance.graph.adjacent(0, comp[0]));
    CHECK(sw.instance.graph.adjacent(0, comp[1]));

    auto fx = prext_to_planar_fix_promise(src);
    CHECK(fx.instance.variant == Variant::fix);
    CHECK(fx.instance.graph.n() == sw.instance.graph.n());
    const auto& fcomp = fx.trace.ids("companions(0)");
    CHECK_FALSE(fx.instance.graph.adjacent(0, fcomp[0]));
    CHECK_FALSE(fx.instance.graph.adjacent(0, fcomp[1]));
    CHECK(fx.instance.graph.adjacent(fcomp[0], fcomp[1]));
    // degree of x drops by two compared to the swap form
    CHECK(fx.instance.graph.degree(0) == sw.instance.graph.degree(0) - 2);
}

TEST_CASE("planar promise generators: fully precolored source") {
    PrExtInstance src;
    src.n = 2;
    src.edges = {{0, 1}};
    src.r = 3;
    src.precoloring = {0, 1};
    auto out = prext_to_planar_swap_promise(src);
    CHECK(out.instance.budget == 0);
    CHECK(is_proper(out.instance.graph));
    CHECK(swap_search(out.instance.graph, 0).decision);
}

TEST_CASE("planar promise generators: preconditions") {
    PrExtInstance odd;
    odd.n = 3;
    odd.edges = {{0, 1}, {0, 2}, {1, 2}};
    odd.r = 3;
    odd.precoloring = {0, 1, PrExtInstance::kUncolored};
    CHECK_THROWS_AS(prext_to_planar_swap_promise(odd), NotBipartite);

    PrExtInstance deg2;
    deg2.n = 3;
    deg2.edges = {{0, 1}, {1, 2}};
    deg2.r = 3;
    deg2.precoloring = {PrExtInstance::kUncolored, 0, PrExtInstance::kUncolored};
    CHECK_THROWS_AS(prext_to_planar_swap_promise(deg2), PrecoloredDegreeNotOne);

    PrExtInstance no_w;
    no_w.n = 2;
    no_w.edges = {{0, 1}};
    no_w.r = 3;
    no_w.precoloring = {PrExtInstance::kUncolored, PrExtInstance::kUncolored};
    CHECK_THROWS_AS(prext_to_planar_swap_promise(no_w), ValidationError);
}

TEST_CASE("strip_promise_bipartite removes the triangle and keeps the decision") {
    PrExtInstance src;
    src.n = 3;
    src.edges = {{0, 1}, {0, 2}};
    src.r = 3;
    src.precoloring = {PrExtInstance::kUncolored, 0, 1};

    for (bool fix_variant : {false, true}) {
        auto out = fix_variant ? prext_to_planar_fix_promise(src)
                               : prext_to_planar_swap_promise(src);
        CHECK_FALSE(is_bipartite(out.instance.graph));
        auto stripped = strip_promise_bipartite(out);
        CHECK(stripped.instance.graph.n() == out.instance.graph.n() - 2);
        CHECK_FALSE(stripped.instance.promise);
        CHECK(is_bipartite(stripped.instance.graph));
        CHECK(planarity_bound_check(stripped.instance.graph));
        bool expected = oracle_prext(src);
        bool got = fix_variant
                       ? fix_branch(stripped.instance.graph, stripped.instance.budget).decision
                       : swap_search(stripped.instance.graph, stripped.instance.budget).decision;
        CHECK(got == expected);
    }
}

TEST_CASE("generators are deterministic") {
    IndSetInstance src;
    src.n = 3;
    src.edges = {{0, 1}, {1, 2}};
    src.k = 2;
    auto a = indset_to_3swap(src);
    auto b = indset_to_3swap(src);
    CHECK(save_to_string(RepairFile{a.instance, a.trace}) ==
          save_to_string(RepairFile{b.instance, b.trace}));

    PrExtInstance pe;
    pe.n = 3;
    pe.edges = {{0, 1}};
    pe.r = 3;
    pe.precoloring = {0, PrExtInstance::kUncolored, PrExtInstance::kUncolored};
    CHECK(save_to_string(RepairFile{prext_to_swap(pe).instance, std::nullopt}) ==
          save_to_string(RepairFile{prext_to_swap(pe).instance, std::nullopt}));
}
