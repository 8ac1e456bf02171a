#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "recolor/corpus.hpp"
#include "recolor/io.hpp"
#include "recolor/verify.hpp"

using namespace recolor;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDisagreement = 1;
constexpr int kExitUsage = 2;

struct GenArgs {
    std::string kind;
    std::string preset;
    std::string out;
    std::string dimacs;
    std::string variant = "fix";
    int n = 8;
    int r = 3;
    int k = 2;
    int t = 2;
    int clauses = 3;
    int edge_percent = 50;
    int precolor_percent = 40;
    bool planar_ready = false;
    bool adjacent_only = false;
    int count = 1;
    std::uint64_t seed = 1;
};

void write_instance(const InstanceFile& file, const std::string& path, const std::string& dimacs) {
    save(file, path);
    if (!dimacs.empty()) {
        const ColoredGraph* g = nullptr;
        ColoredGraph scratch;
        if (const auto* rf = std::get_if<RepairFile>(&file)) {
            g = &rf->instance.graph;
        } else if (const auto* pe = std::get_if<PrExtInstance>(&file)) {
            scratch = ColoredGraph(pe->n, pe->r, pe->edges, std::vector<int>(pe->n, 0));
            g = &scratch;
        } else if (const auto* is = std::get_if<IndSetInstance>(&file)) {
            scratch = ColoredGraph(is->n, 1, is->edges, std::vector<int>(is->n, 0));
            g = &scratch;
        } else {
            throw ValidationError("dimacs export needs a graph instance");
        }
        std::ofstream out(dimacs, std::ios::binary);
        if (!out) throw Error("cannot open " + dimacs + " for writing");
        out << to_dimacs(*g);
    }
}

int run_gen(const GenArgs& args) {
    for (int index = 0; index < args.count; ++index) {
        std::mt19937_64 rng(args.seed + static_cast<std::uint64_t>(index));
        InstanceFile file;
        if (!args.preset.empty()) {
            if (args.preset != "separating")
                throw ValidationError("unknown preset '" + args.preset + "'");
            file = separating_example();
        } else if (args.kind == "repair") {
            RepairFile repair = random_repair(rng, args.n, args.r, args.edge_percent,
                                              variant_from_string(args.variant), args.k);
            repair.instance.adjacent_only = args.adjacent_only;
            repair.instance.validate();
            file = std::move(repair);
        } else if (args.kind == "prext") {
            file = args.planar_ready ? random_planar_ready_prext(rng, args.n)
                                     : random_prext(rng, args.n, args.edge_percent,
                                                    args.precolor_percent);
        } else if (args.kind == "indset") {
            file = random_indset(rng, args.n, args.edge_percent, args.k);
        } else if (args.kind == "cnf3batch") {
            file = random_cnf3batch(rng, args.t, args.n, args.clauses);
        } else {
            throw ValidationError("unknown kind '" + args.kind + "'");
        }
        std::string path =
            args.count == 1 ? args.out : args.out + "." + std::to_string(index);
        write_instance(file, path, args.count == 1 ? args.dimacs : "");
        std::cout << "wrote " << path << "\n";
    }
    return kExitOk;
}

struct ReduceArgs {
    std::string reduction;
    std::string in;
    std::string out;
    std::string dimacs;
    int r = 0;
};

int run_reduce(const ReduceArgs& args) {
    InstanceFile input = load(args.in);
    ReductionOutput out;
    const std::string& name = args.reduction;

    auto need_prext = [&]() -> const PrExtInstance& {
        if (const auto* pe = std::get_if<PrExtInstance>(&input)) return *pe;
        throw ValidationError(name + " expects a prext instance, got " + kind_of(input));
    };
    auto need_repair_with_trace = [&]() -> ReductionOutput {
        const auto* rf = std::get_if<RepairFile>(&input);
        if (!rf) throw ValidationError(name + " expects a repair instance, got " + kind_of(input));
        if (!rf->trace) throw ValidationError(name + " needs the reduction trace in the file");
        return ReductionOutput{rf->instance, *rf->trace};
    };

    if (name == "prext-fix") {
        out = prext_to_fix(need_prext());
    } else if (name == "prext-swap") {
        out = prext_to_swap(need_prext());
    } else if (name == "indset-3swap") {
        const auto* is = std::get_if<IndSetInstance>(&input);
        if (!is) throw ValidationError(name + " expects an indset instance, got " + kind_of(input));
        out = indset_to_3swap(*is);
    } else if (name == "lift-r") {
        if (args.r == 0) throw ValidationError("lift-r needs --r");
        const auto* rf = std::get_if<RepairFile>(&input);
        if (!rf) throw ValidationError(name + " expects a repair instance, got " + kind_of(input));
        if (rf->trace) {
            out = lift_to_r(ReductionOutput{rf->instance, *rf->trace}, args.r);
        } else {
            RepairFile lifted{lift_to_r(rf->instance, args.r), std::nullopt};
            write_instance(lifted, args.out, args.dimacs);
            std::cout << "wrote " << args.out << "\n";
            return kExitOk;
        }
    } else if (name == "promise-augment") {
        ReductionOutput base = need_repair_with_trace();
        auto [n_src, k_src] = indset_trace_params(base.trace);
        out = promise_augment(base, n_src, k_src);
    } else if (name == "cross-compose") {
        const auto* batch = std::get_if<Cnf3Batch>(&input);
        if (!batch)
            throw ValidationError(name + " expects a cnf3batch instance, got " + kind_of(input));
        out = cross_compose(*batch, args.r == 0 ? 3 : args.r);
    } else if (name == "planar-swap-promise") {
        out = prext_to_planar_swap_promise(need_prext());
    } else if (name == "planar-fix-promise") {
        out = prext_to_planar_fix_promise(need_prext());
    } else if (name == "strip-promise") {
        out = strip_promise_bipartite(need_repair_with_trace());
    } else {
        throw ValidationError("unknown reduction '" + name + "'");
    }

    write_instance(RepairFile{out.instance, out.trace}, args.out, args.dimacs);
    std::cout << "wrote " << args.out << " (n=" << out.instance.graph.n()
              << " k=" << out.instance.budget << " variant=" << to_string(out.instance.variant)
              << ")\n";
    return kExitOk;
}

struct SolveArgs {
    std::string in;
    std::string mode = "auto";
    std::string variant;
    int k = -1;
    int cap = 0;
    long state_cap = 0;
};

int run_solve(const SolveArgs& args) {
    InstanceFile input = load(args.in);
    const auto* rf = std::get_if<RepairFile>(&input);
    if (!rf) throw ValidationError("solve expects a repair instance, got " + kind_of(input));
    RepairInstance inst = rf->instance;
    if (!args.variant.empty()) inst.variant = variant_from_string(args.variant);
    if (args.k >= 0) inst.budget = args.k;
    inst.validate();

    SearchLimits limits;
    if (args.cap > 0) {
        limits.enumeration_cap = args.cap;
        limits.chromatic_cap = std::max(limits.chromatic_cap, args.cap);
    }
    if (args.state_cap > 0) limits.state_cap = args.state_cap;

    SolveResult res;
    if (args.mode == "auto") {
        res = solve(inst, limits);
    } else if (args.mode == "brute") {
        res = inst.adjacent_only ? adjacent_swap_optimum(inst.graph, limits)
              : inst.variant == Variant::fix ? fix_optimum(inst.graph, limits)
                                             : swap_optimum(inst.graph, limits);
        res.decision = res.optimum.has_value() && !res.optimum->is_unreachable() &&
                       res.optimum->value() <= inst.budget;
    } else if (args.mode == "branch") {
        if (inst.variant == Variant::fix) {
            res = fix_branch(inst.graph, inst.budget);
        } else {
            SwapSearchOptions opts;
            opts.adjacent_only = inst.adjacent_only;
            res = swap_search(inst.graph, inst.budget, opts);
        }
    } else if (args.mode == "bfs-oracle") {
        res = state_bfs_optimum(inst.graph, inst.variant, inst.adjacent_only, limits);
        res.decision = res.optimum.has_value() && !res.optimum->is_unreachable() &&
                       res.optimum->value() <= inst.budget;
    } else {
        throw ValidationError("unknown mode '" + args.mode + "'");
    }

    std::cout << "decision " << (res.decision ? "yes" : "no") << "\n";
    if (res.optimum)
        std::cout << "optimum " << to_string(*res.optimum) << "\n";
    else
        std::cout << "optimum unknown\n";
    if (res.certificate) {
        std::cout << "certificate " << res.certificate->size() << "\n";
        std::cout << certificate_to_string(*res.certificate);
    }
    return kExitOk;
}

struct VerifyArgs {
    std::string sweep;
    std::string replay;
    std::string in;
    std::string out;
    int max_n = 4;
    int max_k = 2;
    int search_budget_cap = 4;
    int sample = 0;
    int cap = 0;
    std::uint64_t seed = 1;
    bool record_all = false;
};

void write_report_jsonl(const EquivalenceReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    for (const auto& rec : report.records) {
        json j = {{"type", "record"},       {"family", report.family},
                  {"source", rec.source},   {"source_yes", rec.source_yes},
                  {"target_yes", rec.target_yes}, {"agree", rec.agree},
                  {"note", rec.note},       {"millis", rec.millis}};
        out << j.dump() << "\n";
    }
    json summary = {{"type", "summary"},
                    {"family", report.family},
                    {"instances", report.instances},
                    {"disagreements", report.disagreements},
                    {"skipped", report.skipped},
                    {"max_n", report.options.max_n},
                    {"max_k", report.options.max_k},
                    {"seed", report.options.seed}};
    out << summary.dump() << "\n";
}

int run_verify(const VerifyArgs& args) {
    if (!args.replay.empty()) {
        InstanceFile input = load(args.in);
        if (args.replay == "indset") {
            const auto* is = std::get_if<IndSetInstance>(&input);
            if (!is) throw ValidationError("replay indset expects an indset instance");
            auto witness = indset_witness(*is);
            if (!witness) {
                std::cout << "source is a NO instance; nothing to replay\n";
                return kExitDisagreement;
            }
            auto out = indset_to_3swap(*is);
            auto cert = replay_indset_certificate(*is, *witness, out);
            std::cout << "replayed " << cert.size() << " swaps (budget "
                      << out.instance.budget << "), proper\n";
            std::cout << certificate_to_string(cert);
            return kExitOk;
        }
        if (args.replay == "cross-compose") {
            const auto* batch = std::get_if<Cnf3Batch>(&input);
            if (!batch) throw ValidationError("replay cross-compose expects a cnf3batch instance");
            for (int h = 0; h < batch->t(); ++h) {
                if (auto assignment = sat_witness(batch->formulas[h])) {
                    auto out = cross_compose(*batch);
                    auto cert = replay_crosscompose_certificate(*batch, h, *assignment, out);
                    std::cout << "replayed formula " << h << ": " << cert.size()
                              << " recolorings (budget " << out.instance.budget << "), proper\n";
                    return kExitOk;
                }
            }
            std::cout << "every formula is unsatisfiable; nothing to replay\n";
            return kExitDisagreement;
        }
        throw ValidationError("unknown replay '" + args.replay + "'");
    }

    SweepOptions options;
    options.max_n = args.max_n;
    options.max_k = args.max_k;
    options.search_budget_cap = args.search_budget_cap;
    options.sample = args.sample;
    options.seed = args.seed;
    options.record_all = args.record_all;
    if (args.cap > 0) {
        options.limits.enumeration_cap = args.cap;
        options.limits.chromatic_cap = std::max(options.limits.chromatic_cap, args.cap);
    }
    EquivalenceReport report = run_sweep(sweep_family_from_string(args.sweep), options);
    std::cout << summarize(report) << "\n";
    if (!args.out.empty()) write_report_jsonl(report, args.out);
    return report.passed() ? kExitOk : kExitDisagreement;
}

struct ReportArgs {
    std::vector<std::string> inputs;
};

int run_report(const ReportArgs& args) {
    struct Row {
        long instances = 0;
        long disagreements = 0;
        long skipped = 0;
        double millis = 0;
        long timed = 0;
    };
    std::map<std::string, Row> rows;
    for (const auto& path : args.inputs) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw Error("cannot open " + path);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            json j = json::parse(line);
            std::string family = j.value("family", "?");
            Row& row = rows[family];
            if (j.value("type", "") == "summary") {
                row.instances += j.value("instances", 0);
                row.disagreements += j.value("disagreements", 0);
                row.skipped += j.value("skipped", 0);
            } else if (j.value("type", "") == "record") {
                row.millis += j.value("millis", 0.0);
                ++row.timed;
            }
        }
    }
    std::cout << "family                     instances  disagree  skipped  avg-ms\n";
    long total_disagree = 0;
    for (const auto& [family, row] : rows) {
        double avg = row.timed > 0 ? row.millis / row.timed : 0.0;
        std::printf("%-26s %9ld %9ld %8ld %7.2f\n", family.c_str(), row.instances,
                    row.disagreements, row.skipped, avg);
        total_disagree += row.disagreements;
    }
    return total_disagree == 0 ? kExitOk : kExitDisagreement;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact solvers, reduction compilers, and verification sweeps "
                 "for coloring repair problems"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "generate source and repair instances");
    gen_cmd->add_option("--kind", gen.kind, "repair|prext|indset|cnf3batch");
    gen_cmd->add_option("--preset", gen.preset, "named instance: separating");
    gen_cmd->add_option("--n", gen.n, "vertex/variable count");
    gen_cmd->add_option("--r", gen.r, "color count");
    gen_cmd->add_option("--k", gen.k, "budget or target size");
    gen_cmd->add_option("--t", gen.t, "formulas per batch (power of two)");
    gen_cmd->add_option("--m", gen.clauses, "clauses per formula");
    gen_cmd->add_option("--edge-percent", gen.edge_percent, "edge probability in percent");
    gen_cmd->add_option("--precolor-percent", gen.precolor_percent,
                        "precoloring probability in percent");
    gen_cmd->add_option("--variant", gen.variant, "fix|swap");
    gen_cmd->add_flag("--planar-ready", gen.planar_ready,
                      "emit a tree source with degree-1 precolored vertices");
    gen_cmd->add_flag("--adjacent-only", gen.adjacent_only,
                      "restrict swaps to edges (swap variant only)");
    gen_cmd->add_option("--count", gen.count, "number of instances");
    gen_cmd->add_option("--seed", gen.seed, "random seed")->envname("RECOLOR_SEED");
    gen_cmd->add_option("--out", gen.out, "output path")->required();
    gen_cmd->add_option("--export-dimacs", gen.dimacs, "also write the graph as DIMACS");

    ReduceArgs reduce;
    auto* reduce_cmd = app.add_subcommand("reduce", "compile a source instance into a repair instance");
    reduce_cmd
        ->add_option("--reduction", reduce.reduction,
                     "prext-fix|prext-swap|indset-3swap|lift-r|promise-augment|cross-compose|"
                     "planar-swap-promise|planar-fix-promise|strip-promise")
        ->required();
    reduce_cmd->add_option("--in", reduce.in, "input instance file")->required();
    reduce_cmd->add_option("--out", reduce.out, "output instance file")->required();
    reduce_cmd->add_option("--r", reduce.r, "target color count (lift-r, cross-compose)");
    reduce_cmd->add_option("--export-dimacs", reduce.dimacs, "also write the graph as DIMACS");

    SolveArgs solve_args;
    auto* solve_cmd = app.add_subcommand("solve", "run the matching exact solver");
    solve_cmd->add_option("--in", solve_args.in, "repair instance file")->required();
    solve_cmd->add_option("--mode", solve_args.mode, "auto|brute|branch|bfs-oracle");
    solve_cmd->add_option("--variant", solve_args.variant, "override the variant");
    solve_cmd->add_option("--k", solve_args.k, "override the budget");
    solve_cmd->add_option("--cap", solve_args.cap, "exact-search vertex cap")
        ->envname("RECOLOR_CAP");
    solve_cmd->add_option("--state-cap", solve_args.state_cap, "state-space search cap");

    VerifyArgs verify_args;
    auto* verify_cmd = app.add_subcommand("verify", "run an equivalence sweep or a certificate replay");
    verify_cmd->add_option("--sweep", verify_args.sweep,
                           "prext-fix|prext-swap|indset-3swap|planar-swap-promise|"
                           "planar-fix-promise|cross-compose|promise-augment|gadget-p1p2");
    verify_cmd->add_option("--replay", verify_args.replay, "indset|cross-compose");
    verify_cmd->add_option("--in", verify_args.in, "source instance for --replay");
    verify_cmd->add_option("--max-n", verify_args.max_n, "largest source size")
        ->envname("RECOLOR_MAX_N");
    verify_cmd->add_option("--max-k", verify_args.max_k, "largest source parameter")
        ->envname("RECOLOR_MAX_K");
    verify_cmd->add_option("--search-budget-cap", verify_args.search_budget_cap,
                           "largest budget for bounded NO-side searches");
    verify_cmd->add_option("--cap", verify_args.cap, "exact-search vertex cap")
        ->envname("RECOLOR_CAP");
    verify_cmd->add_option("--seed", verify_args.seed, "random seed")->envname("RECOLOR_SEED");
    verify_cmd->add_option("--sample", verify_args.sample, "sampled sweep: number of seeded random sources (0 = exhaustive)");
    verify_cmd->add_flag("--record-all", verify_args.record_all, "keep every per-instance record");
    verify_cmd->add_option("--out", verify_args.out, "write per-instance records as JSONL");

    ReportArgs report_args;
    auto* report_cmd = app.add_subcommand("report", "summarize sweep outputs as a table");
    report_cmd->add_option("--in", report_args.inputs, "JSONL report files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen_cmd->parsed()) return run_gen(gen);
        if (reduce_cmd->parsed()) return run_reduce(reduce);
        if (solve_cmd->parsed()) return run_solve(solve_args);
        if (verify_cmd->parsed()) {
            if (verify_args.sweep.empty() == verify_args.replay.empty()) {
                std::cerr << "verify needs exactly one of --sweep or --replay\n";
                return kExitUsage;
            }
            return run_verify(verify_args);
        }
        if (report_cmd->parsed()) return run_report(report_args);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDisagreement;
    }
    return kExitUsage;
}
