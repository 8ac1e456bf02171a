#include "doctest.h"

#include "recolor/verify.hpp"

using namespace recolor;

TEST_CASE("oracle_prext basics") {
    // no precolored vertices: extendable iff 3-colorable
    PrExtInstance empty_w;
    empty_w.n = 3;
    empty_w.edges = {{0, 1}, {0, 2}, {1, 2}};
    empty_w.r = 3;
    empty_w.precoloring = {-1, -1, -1};
    CHECK(oracle_prext(empty_w));

    PrExtInstance star;
    star.n = 4;
    star.edges = {{0, 1}, {0, 2}, {0, 3}};
    star.r = 3;
    star.precoloring = {-1, 0, 1, 2};
    CHECK_FALSE(oracle_prext(star));

    PrExtInstance capped;
    capped.n = 25;
    capped.r = 3;
    capped.precoloring.assign(25, -1);
    CHECK_THROWS_AS(oracle_prext(capped, 20), SearchCapExceeded);
}

TEST_CASE("oracle_indset basics") {
    IndSetInstance edgeless;
    edgeless.n = 5;
    edgeless.k = 5;
    CHECK(oracle_indset(edgeless));

    IndSetInstance k4;
    k4.n = 4;
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) k4.edges.emplace_back(u, v);
    k4.k = 2;
    CHECK_FALSE(oracle_indset(k4));
    k4.k = 1;
    CHECK(oracle_indset(k4));
    auto witness = indset_witness(k4);
    REQUIRE(witness.has_value());
    CHECK(*witness == std::vector<int>{0});
}

TEST_CASE("oracle_3sat basics") {
    Cnf3Formula sat;
    sat.num_vars = 3;
    sat.clauses = {{1, 2, 3}, {-1, -2, -3}};
    CHECK(oracle_3sat(sat));

    Cnf3Formula unsat;
    unsat.num_vars = 1;
    unsat.clauses = {{1}, {-1}};
    CHECK_FALSE(oracle_3sat(unsat));
}

TEST_CASE("clause gadget properties hold under the frozen table") {
    auto report = verify_gadget_p1_p2();
    CHECK(report.p1_holds);
    CHECK(report.p2_holds);
    CHECK(report.boundaries_checked == 81);
    // boundaries with a color-1 vertex: 81 - 2^4 = 65
    CHECK(report.p2_boundaries == 65);
    // all-{0,2} boundaries with at least one 2
    CHECK(report.unclaimed_boundaries == 15);
}

TEST_CASE("prext sweeps agree at n <= 3") {
    SweepOptions opts;
    opts.max_n = 3;
    auto fix_report = run_sweep(SweepFamily::prext_fix, opts);
    CHECK(fix_report.passed());
    CHECK(fix_report.instances > 0);
    auto swap_report = run_sweep(SweepFamily::prext_swap, opts);
    CHECK(swap_report.passed());
    CHECK(swap_report.instances == fix_report.instances);
}

TEST_CASE("indset sweep agrees at n <= 3") {
    SweepOptions opts;
    opts.max_n = 3;
    opts.max_k = 3;
    auto report = run_sweep(SweepFamily::indset_3swap, opts);
    CHECK(report.passed());
    CHECK(report.instances > 0);
}

TEST_CASE("planar sweeps agree at n <= 3") {
    SweepOptions opts;
    opts.max_n = 3;
    for (SweepFamily family : {SweepFamily::planar_swap_promise, SweepFamily::planar_fix_promise}) {
        auto report = run_sweep(family, opts);
        CHECK(report.passed());
        CHECK(report.instances > 0);
    }
}

TEST_CASE("promise augment sweep holds at n <= 3") {
    SweepOptions opts;
    opts.max_n = 3;
    opts.max_k = 2;
    auto report = run_sweep(SweepFamily::promise_augment, opts);
    CHECK(report.passed());
    CHECK(report.instances > 0);
}

TEST_CASE("cross-compose sweep: budgets, replay, structural NO evidence") {
    auto report = run_sweep(SweepFamily::cross_compose, {});
    CHECK(report.passed());
    CHECK(report.instances == 4);
}

TEST_CASE("sweep families round-trip through their names") {
    for (SweepFamily family :
         {SweepFamily::prext_fix, SweepFamily::prext_swap, SweepFamily::indset_3swap,
          SweepFamily::planar_swap_promise, SweepFamily::planar_fix_promise,
          SweepFamily::cross_compose, SweepFamily::promise_augment, SweepFamily::gadget_p1p2}) {
        CHECK(sweep_family_from_string(to_string(family)) == family);
    }
    CHECK_THROWS_AS(sweep_family_from_string("nonsense"), ValidationError);
}
