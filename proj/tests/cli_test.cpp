#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string cli_path() {
    const char* path = std::getenv("RECOLOR_CLI_BIN");
    REQUIRE_MESSAGE(path != nullptr, "RECOLOR_CLI_BIN must point at the recolor binary");
    return path;
}

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    std::string command = cli_path() + " " + args + " 2>&1";
    std::array<char, 4096> buffer{};
    RunResult result;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    size_t got;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        result.output.append(buffer.data(), got);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string tmp_file(const std::string& name) {
    return "cli_test_" + name;
}

} // namespace

TEST_CASE("solve prints the separating example's optima") {
    auto sep = tmp_file("sep.rcl");
    CHECK(run("gen --preset separating --out " + sep).exit_code == 0);

    auto fix = run("solve --in " + sep);
    CHECK(fix.exit_code == 0);
    CHECK(fix.output.find("decision yes") != std::string::npos);
    CHECK(fix.output.find("optimum 3") != std::string::npos);

    auto swap = run("solve --in " + sep + " --variant swap --k 2");
    CHECK(swap.exit_code == 0);
    CHECK(swap.output.find("optimum 2") != std::string::npos);

    auto bfs = run("solve --in " + sep + " --mode bfs-oracle");
    CHECK(bfs.output.find("optimum 3") != std::string::npos);
}

TEST_CASE("fixed-seed generation is byte-identical across runs") {
    auto a = tmp_file("gen_a.rcl");
    auto b = tmp_file("gen_b.rcl");
    CHECK(run("gen --kind repair --n 10 --seed 77 --out " + a).exit_code == 0);
    CHECK(run("gen --kind repair --n 10 --seed 77 --out " + b).exit_code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK_FALSE(slurp(a).empty());

    CHECK(run("gen --kind cnf3batch --t 2 --n 3 --m 2 --seed 5 --out " + a).exit_code == 0);
    CHECK(run("gen --kind cnf3batch --t 2 --n 3 --m 2 --seed 5 --out " + b).exit_code == 0);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("reduce then solve then verify compose on files") {
    auto src = tmp_file("pipe_src.rcl");
    auto reduced = tmp_file("pipe_red.rcl");
    auto stripped = tmp_file("pipe_strip.rcl");
    CHECK(run("gen --kind prext --planar-ready --n 4 --seed 11 --out " + src).exit_code == 0);
    CHECK(run("reduce --reduction planar-swap-promise --in " + src + " --out " + reduced)
              .exit_code == 0);
    CHECK(run("solve --in " + reduced + " --mode branch").exit_code == 0);
    CHECK(run("reduce --reduction strip-promise --in " + reduced + " --out " + stripped)
              .exit_code == 0);

    auto report = tmp_file("sweep.jsonl");
    auto sweep = run("verify --sweep prext-fix --max-n 2 --record-all --out " + report);
    CHECK(sweep.exit_code == 0);
    CHECK(sweep.output.find("0 disagreements") != std::string::npos);

    auto table = run("report --in " + report);
    CHECK(table.exit_code == 0);
    CHECK(table.output.find("prext-fix") != std::string::npos);
}

TEST_CASE("usage and domain errors exit with the documented codes") {
    CHECK(run("bogus-subcommand").exit_code == 2);
    CHECK(run("solve").exit_code == 2);
    CHECK(run("solve --in does_not_exist.rcl").exit_code == 1);
    CHECK(run("verify --sweep nonsense --max-n 1").exit_code == 2);
    CHECK(run("verify --max-n 1").exit_code == 2);

    // a repair file fed to an indset reduction is a usage error
    auto sep = tmp_file("sep2.rcl");
    run("gen --preset separating --out " + sep);
    auto wrong = run("reduce --reduction indset-3swap --in " + sep + " --out x.rcl");
    CHECK(wrong.exit_code == 2);
}
