#include "doctest.h"

#include "recolor/corpus.hpp"
#include "recolor/io.hpp"
#include "recolor/reductions.hpp"

using namespace recolor;

TEST_CASE("round trips on generator outputs") {
    IndSetInstance src;
    src.n = 3;
    src.edges = {{0, 1}, {1, 2}};
    src.k = 1;
    auto out = indset_to_3swap(src);
    RepairFile file{out.instance, out.trace};
    std::string text = save_to_string(file);
    auto loaded = load_from_string(text);
    CHECK(save_to_string(loaded) == text);
    const auto& rf = std::get<RepairFile>(loaded);
    CHECK(rf.instance.graph.coloring() == out.instance.graph.coloring());
    CHECK(rf.instance.budget == out.instance.budget);
    REQUIRE(rf.trace.has_value());
    CHECK(rf.trace->records == out.trace.records);
}

TEST_CASE("round trips on source kinds") {
    PrExtInstance pe;
    pe.n = 4;
    pe.edges = {{2, 0}, {1, 3}};
    pe.r = 3;
    pe.precoloring = {0, -1, -1, 2};
    auto pe_loaded = load_from_string(save_to_string(pe));
    CHECK(save_to_string(pe_loaded) == save_to_string(pe));
    CHECK(std::get<PrExtInstance>(pe_loaded).precoloring == pe.precoloring);

    IndSetInstance is;
    is.n = 4;
    is.edges = {{0, 3}};
    is.k = 2;
    CHECK(save_to_string(load_from_string(save_to_string(is))) == save_to_string(is));

    Cnf3Batch batch;
    Cnf3Formula f;
    f.num_vars = 3;
    f.clauses = {{1, -2, 3}, {-1, 2}};
    batch.formulas = {f, f};
    auto batch_loaded = load_from_string(save_to_string(batch));
    CHECK(save_to_string(batch_loaded) == save_to_string(batch));
    CHECK(std::get<Cnf3Batch>(batch_loaded).formulas[1].clauses == f.clauses);
}

TEST_CASE("separating example round trip keeps the trace") {
    auto file = separating_example();
    auto loaded = load_from_string(save_to_string(file));
    CHECK(save_to_string(loaded) == save_to_string(file));
}

TEST_CASE("validation failures name the violated invariant") {
    // color equal to r
    std::string bad_color =
        "recolor 1\nkind repair\nn 2\nr 3\nk 0\nvariant fix\npromise 0\nadjacent_only 0\n"
        "coloring 0 3\nedges 0\nend\n";
    CHECK_THROWS_AS(load_from_string(bad_color), ValidationError);

    std::string dup_edge =
        "recolor 1\nkind repair\nn 2\nr 3\nk 0\nvariant fix\npromise 0\nadjacent_only 0\n"
        "coloring 0 1\nedges 2\n0 1\n1 0\nend\n";
    CHECK_THROWS_AS(load_from_string(dup_edge), ValidationError);

    std::string self_loop =
        "recolor 1\nkind indset\nn 2\nk 1\nedges 1\n1 1\nend\n";
    CHECK_THROWS_AS(load_from_string(self_loop), ValidationError);
}

TEST_CASE("parse errors carry line diagnostics") {
    try {
        load_from_string("recolor 1\nkind repair\nn two\n", "bad.rcl");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("bad.rcl:3") != std::string::npos);
    }
    CHECK_THROWS_AS(load_from_string(""), ParseError);
    CHECK_THROWS_AS(load_from_string("recolor 2\nkind indset\n"), ParseError);
    CHECK_THROWS_AS(load_from_string("recolor 1\nkind mystery\n"), ParseError);
}

TEST_CASE("certificates print one move per line and parse back") {
    Certificate cert{{RecolorMove{4, 2}, RecolorMove{1, 0}}};
    CHECK(certificate_to_string(cert) == "R 4 2\nR 1 0\n");
    Certificate swaps{{SwapMove{0, 5}}};
    CHECK(certificate_to_string(swaps) == "S 0 5\n");

    auto parsed = certificate_from_string("R 4 2\nS 0 5\n");
    CHECK(parsed.size() == 2);
    CHECK(certificate_from_string(certificate_to_string(cert)).size() == 2);
    CHECK_THROWS_AS(certificate_from_string("Q 1 2\n"), ParseError);
}

TEST_CASE("dimacs export carries the structure only") {
    ColoredGraph g(3, 3, {{0, 1}, {1, 2}}, {0, 1, 0});
    CHECK(to_dimacs(g) == "p edge 3 2\ne 1 2\ne 2 3\n");
}

TEST_CASE("random corpus generation is seed-deterministic") {
    std::mt19937_64 a(42);
    std::mt19937_64 b(42);
    auto ga = random_repair(a, 8, 3, 50, Variant::fix, 2);
    auto gb = random_repair(b, 8, 3, 50, Variant::fix, 2);
    CHECK(save_to_string(RepairFile{ga.instance, std::nullopt}) ==
          save_to_string(RepairFile{gb.instance, std::nullopt}));

    std::mt19937_64 c(7);
    std::mt19937_64 d(7);
    CHECK(save_to_string(random_planar_ready_prext(c, 6)) ==
          save_to_string(random_planar_ready_prext(d, 6)));
    CHECK(save_to_string(random_cnf3batch(c, 2, 3, 2)) !=
          save_to_string(random_cnf3batch(d, 4, 3, 2)));
}
