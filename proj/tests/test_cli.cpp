#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "biop/algstruct.hpp"
#include "biop/instances.hpp"

// End-to-end tests of the command-line tool.  argv[1] is the tool binary,
// argv[2] the golden directory.

namespace {

std::string g_tool, g_golden;

struct RunResult {
    int status = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    RunResult r;
    FILE* p = popen((g_tool + " " + args + " 2>/dev/null").c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int raw = pclose(p);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << bytes;
}

nlohmann::json dense(const biop::LinOp& op) {
    auto rows = nlohmann::json::array();
    for (long r = 0; r < op.cod; ++r)
        rows.push_back(std::vector<long>((size_t)op.dom, 0));
    for (long j = 0; j < op.dom; ++j)
        for (const auto& [r, v] : op.col(j)) rows.at(r).at(j) = v.get_num().get_si();
    return rows;
}

// the explicit-matrix serialization of algebra data for a law-check file
nlohmann::json algebra_section(const biop::DiopPair& q, const biop::AlgebraData& a) {
    nlohmann::json dims, ops;
    for (const auto& [cls, d] : a.dim) dims[std::to_string(cls)] = d;
    for (const auto& [x, op] : a.op) ops[q.base->objects[x]] = dense(op);
    return {{"dims", dims}, {"ops", ops}};
}

}  // namespace

TEST_CASE("worked example output matches the golden bytes") {
    RunResult r = run("paper-example bbq-phi");
    CHECK(r.status == 0);
    CHECK(r.out == slurp(g_golden + "/bbq-phi.json"));
}

TEST_CASE("suite subcommands succeed on small instances") {
    CHECK(run("check-bioperad arr:path3 --no-timing").status == 0);
    CHECK(run("check-dioperad pset:2 --no-timing").status == 0);
    CHECK(run("check-opcat sfset2:2 --no-timing").status == 0);
    RunResult fib = run("fibers pset:2 \"(1->1:1)\"");
    CHECK(fib.status == 0);
    auto j = nlohmann::json::parse(fib.out);
    CHECK(j.at("checks").at(0).at("source") == "1+*");
}

TEST_CASE("law-check accepts the builtin trace data file") {
    RunResult r = run("law-check --instance sfset2:2 --structure trace --data " + g_golden +
                      "/necklace-trace.json --no-timing");
    CHECK(r.status == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("status") == "pass");
    CHECK(j.at("checks").at(0).at("check") == "trace-law");
}

TEST_CASE("explicit-matrix law-check fails on corrupted data and replays") {
    biop::Field f3 = biop::Field::prime(3);
    biop::DiopPair q = biop::sfset2(2);
    biop::AlgebraData a = biop::word_algebra(q, f3, biop::word_space(2, 3));

    nlohmann::json data{{"field", "f3"},
                        {"operad", "builtin:order-operad"},
                        {"algebra", algebra_section(q, a)}};
    spit("cli_alg_pass.json", data.dump(2));
    CHECK(run("law-check --instance sfset2:2 --structure algebra --data cli_alg_pass.json "
              "--no-timing")
              .status == 0);

    // corrupt one matrix entry of a binary product
    for (auto& [name, rows] : data["algebra"]["ops"].items()) {
        bool hit = false;
        for (auto& row : rows)
            for (auto& v : row)
                if (!hit && v.get<long>() == 1 && row.size() > 4) {
                    v = 2;
                    hit = true;
                }
        if (hit) break;
    }
    spit("cli_alg_fail.json", data.dump(2));
    RunResult bad = run("law-check --instance sfset2:2 --structure algebra --data "
                        "cli_alg_fail.json --no-timing -o cli_alg_fail_report.json");
    CHECK(bad.status == 1);
    auto j = nlohmann::json::parse(bad.out);
    REQUIRE(j.at("status") == "fail");
    REQUIRE(j.at("checks").at(0).contains("witness"));
    CHECK(j.at("checks").at(0).at("witness").contains("replay"));
    CHECK(slurp("cli_alg_fail_report.json") == bad.out);

    RunResult rep = run("replay cli_alg_fail_report.json");
    CHECK(rep.status == 0);
    auto rj = nlohmann::json::parse(rep.out);
    CHECK(rj.at("reproduced") == true);
}

TEST_CASE("seeded runs are reproducible and the seed is configurable") {
    std::string args = "bicharade-det --field f3 --dims 2 --samples 25 --seed 7 --no-timing";
    RunResult a = run(args), b = run(args);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);

    setenv("BIOPERAD_SEED", "9", 1);
    RunResult c = run("bicharade-det --field f3 --dims 2 --samples 25 --no-timing");
    unsetenv("BIOPERAD_SEED");
    CHECK(nlohmann::json::parse(c.out).at("config").at("seed") == 9);
}

TEST_CASE("the sign-slip control is caught and its witness replays") {
    // odd characteristic: the misordered pairing is invisible over f2
    RunResult r = run("bicharade-det --field f3 --dims 2 --samples 40 --seed 1 --sign-slip "
                      "--no-timing -o cli_slip_report.json");
    CHECK(r.status == 1);
    RunResult rep = run("replay cli_slip_report.json");
    CHECK(rep.status == 0);
    CHECK(nlohmann::json::parse(rep.out).at("reproduced") == true);
}

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: test_cli <tool> <golden-dir>\n");
        return 2;
    }
    g_tool = argv[1];
    g_golden = argv[2];
    doctest::Context ctx;
    ctx.applyCommandLine(1, argv);
    return ctx.run();
}
