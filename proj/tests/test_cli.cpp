// Drives the command line binary as a subprocess; the path comes in through
// the MUVC_CLI_PATH compile definition.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "doctest.h"
#include "json.hpp"
#include "muvc/cw_expression.hpp"
#include "muvc/graph.hpp"

namespace muvc {
namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    const std::string command = std::string(MUVC_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult res;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) {
        res.output.append(buf, got);
    }
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::filesystem::path test_dir() {
    static const std::filesystem::path dir = [] {
        auto d = std::filesystem::temp_directory_path() /
                 ("muvc_cli_tests_" + std::to_string(getpid()));
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

std::string write_file(const std::string& name, const std::string& content) {
    const std::filesystem::path path = test_dir() / name;
    std::ofstream out(path);
    REQUIRE(out.good());
    out << content;
    return path.string();
}

std::string fig1_gr() {
    return write_file("fig1.gr",
                      "p 9 8\ne 1 2\ne 2 3\ne 1 4\ne 4 5\ne 1 6\ne 6 7\ne 1 8\n"
                      "e 1 9\n");
}

std::string k2_cwx() {
    return write_file("k2.cwx", "(eta 1 2 (union (v 1 1) (v 2 2)))\n");
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

std::map<std::string, std::string> parse_key_values(const std::string& text) {
    std::map<std::string, std::string> out;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) {
            end = text.size();
        }
        const std::string line = text.substr(start, end - start);
        const std::size_t colon = line.find(": ");
        if (colon != std::string::npos) {
            out[line.substr(0, colon)] = line.substr(colon + 2);
        }
        start = end + 1;
    }
    return out;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("solve-tree reports the worked tree example") {
    const CliResult res = run_cli("solve-tree " + fig1_gr() + " --verify");
    CHECK(res.exit_code == 0);
    CHECK(contains(res.output, "seed: 0\n"));
    CHECK(contains(res.output, "tie-break: size-then-lex, prefer-keep\n"));
    CHECK(contains(res.output, "solver: tree\n"));
    CHECK(contains(res.output, "status: solved\n"));
    CHECK(contains(res.output, "opt: 2\n"));
    CHECK(contains(res.output, "deletions: 8 9\n"));
    CHECK(contains(res.output, "cover: 2 4 6\n"));
    CHECK(contains(res.output, "cover-size: 3\n"));
    CHECK(contains(res.output, "verification: ok\n"));
}

TEST_CASE("json and text reports carry the same values") {
    const std::string path = fig1_gr();
    const CliResult text = run_cli("solve-tree " + path + " --verify");
    const CliResult json = run_cli("solve-tree " + path + " --verify --json");
    CHECK(text.exit_code == 0);
    CHECK(json.exit_code == 0);
    const auto kv = parse_key_values(text.output);
    const nlohmann::json j = nlohmann::json::parse(json.output);
    CHECK(j.at("seed").get<std::uint64_t>() == 0);
    CHECK(j.at("tie-break").get<std::string>() == kv.at("tie-break"));
    CHECK(j.at("solver").get<std::string>() == kv.at("solver"));
    CHECK(j.at("instance").get<std::string>() == kv.at("instance"));
    CHECK(j.at("status").get<std::string>() == kv.at("status"));
    CHECK(std::to_string(j.at("opt").get<std::int64_t>()) == kv.at("opt"));
    CHECK(j.at("deletions") == nlohmann::json({8, 9}));
    CHECK(kv.at("deletions") == "8 9");
    CHECK(j.at("cover") == nlohmann::json({2, 4, 6}));
    CHECK(kv.at("cover") == "2 4 6");
    CHECK(std::to_string(j.at("cover-size").get<std::int64_t>()) ==
          kv.at("cover-size"));
    CHECK(j.at("verification").get<std::string>() == kv.at("verification"));
    CHECK(j.contains("time-ms"));
    CHECK(kv.count("time-ms") == 1);
}

TEST_CASE("verify replays the figure deletion") {
    const std::string path = fig1_gr();
    const CliResult res = run_cli("verify " + path + " --delete 8,9");
    CHECK(res.exit_code == 0);
    CHECK(contains(res.output, "mvc: 4\n"));
    CHECK(contains(res.output, "deleted: 8 9\n"));
    CHECK(contains(res.output, "unique: true\n"));
    CHECK(contains(res.output, "cover: 2 4 6\n"));
    CHECK(contains(res.output, "cover-size: 3\n"));

    const CliResult bare = run_cli("verify " + path);
    CHECK(bare.exit_code == 0);
    CHECK(contains(bare.output, "deleted: -\n"));
    CHECK(contains(bare.output, "unique: false\n"));
}

TEST_CASE("budgeted expression solver reports infeasibility with exit two") {
    const std::string path = k2_cwx();
    const CliResult infeasible = run_cli("solve-cw --expr " + path + " --fpt --k 0");
    CHECK(infeasible.exit_code == 2);
    CHECK(contains(infeasible.output, "status: infeasible within k=0\n"));
    CHECK_FALSE(contains(infeasible.output, "opt:"));

    const CliResult feasible = run_cli("solve-cw --expr " + path + " --fpt --k 1");
    CHECK(feasible.exit_code == 0);
    CHECK(contains(feasible.output, "solver: cw-fpt\n"));
    CHECK(contains(feasible.output, "opt: 1\n"));

    const CliResult full = run_cli("solve-cw --expr " + path + " --verify");
    CHECK(full.exit_code == 0);
    CHECK(contains(full.output, "solver: cw\n"));
    CHECK(contains(full.output, "opt: 1\n"));
    CHECK(contains(full.output, "deletions: 1\n"));
    CHECK(contains(full.output, "verification: ok\n"));
}

TEST_CASE("treewidth solver accepts a decomposition file") {
    const std::string gr = fig1_gr();
    const std::string td = write_file("fig1.td",
                                      "s td 8 2 9\n"
                                      "b 1 1 2\nb 2 2 3\nb 3 1 4\nb 4 4 5\n"
                                      "b 5 1 6\nb 6 6 7\nb 7 1 8\nb 8 1 9\n"
                                      "1 2\n1 3\n3 4\n3 5\n5 6\n5 7\n7 8\n");
    const CliResult with_td = run_cli("solve-tw " + gr + " --td " + td + " --verify");
    CHECK(with_td.exit_code == 0);
    CHECK(contains(with_td.output, "solver: tw\n"));
    CHECK(contains(with_td.output, "opt: 2\n"));
    CHECK(contains(with_td.output, "verification: ok\n"));

    const CliResult truncated = run_cli("solve-tw " + gr + " --truncate-degree");
    CHECK(truncated.exit_code == 0);
    CHECK(contains(truncated.output, "opt: 2\n"));

    // Without a decomposition only forests are accepted.
    const std::string tri = write_file("tri.gr", "p 3 3\ne 1 2\ne 2 3\ne 1 3\n");
    const CliResult cyclic = run_cli("solve-tw " + tri);
    CHECK(cyclic.exit_code == 1);
}

TEST_CASE("oracle budgets and the pinning oracle") {
    const std::string path = fig1_gr();
    const CliResult capped = run_cli("oracle " + path + " --k 1");
    CHECK(capped.exit_code == 2);
    CHECK(contains(capped.output, "status: infeasible within k=1\n"));

    const CliResult full = run_cli("oracle " + path + " --verify");
    CHECK(full.exit_code == 0);
    CHECK(contains(full.output, "solver: oracle\n"));
    CHECK(contains(full.output, "opt: 2\n"));
    CHECK(contains(full.output, "verification: ok\n"));

    const CliResult pau = run_cli("pauvc-oracle " + path);
    CHECK(pau.exit_code == 0);
    CHECK(contains(pau.output, "solver: pauvc-oracle\n"));
    CHECK(contains(pau.output, "opt: 3\n"));
    CHECK(contains(pau.output, "pinned: 2 4 6\n"));
}

TEST_CASE("generated instances feed back into the tool") {
    const CliResult gk = run_cli("gen-gk --k 5");
    CHECK(gk.exit_code == 0);
    const Graph g5 = parse_gr_text(gk.output, "gen");
    CHECK(g5.vertex_count() == 13);
    CHECK(g5.edge_count() == 12);
    const std::string g5_path = write_file("g5.gr", gk.output);
    const CliResult solved = run_cli("solve-tree " + g5_path);
    CHECK(solved.exit_code == 0);
    CHECK(contains(solved.output, "opt: 2\n"));

    const CliResult tree_a = run_cli("gen-random --n 9 --seed 4");
    const CliResult tree_b = run_cli("gen-random --n 9 --seed 4");
    CHECK(tree_a.output == tree_b.output);
    const Graph t = parse_gr_text(tree_a.output, "gen");
    CHECK(t.vertex_count() == 9);
    CHECK(t.edge_count() == 8);

    const CliResult dense = run_cli("gen-random --n 6 --kind gnp --p 1.0 --seed 1");
    CHECK(parse_gr_text(dense.output, "gen").edge_count() == 15);

    const CliResult cograph = run_cli("gen-random --n 6 --kind cograph --seed 3");
    CHECK(cograph.exit_code == 0);
    const CwExpression e = parse_cw_expression_text(cograph.output, "gen");
    CHECK(cw_vertex_count(e) == 6);
}

TEST_CASE("hardness generator writes the sidecar and a solvable instance") {
    const std::string formula =
        write_file("fig3.formula", "x 2\ny 2\nx1 x2 -y1\n-x1 y1 y2\n");
    const std::string roles_path = (test_dir() / "fig3.roles").string();
    const CliResult gen =
        run_cli("gen-hardness " + formula + " --roles " + roles_path);
    CHECK(gen.exit_code == 0);
    const Graph g = parse_gr_text(gen.output, "gen");
    CHECK(g.vertex_count() == 102);
    CHECK(g.edge_count() == 146);
    std::ifstream roles(roles_path);
    REQUIRE(roles.good());
    std::string line;
    int lines = 0;
    while (std::getline(roles, line)) {
        ++lines;
    }
    CHECK(lines == 102);

    // The empty deletion set leaves several minimum covers, so a zero
    // budget must come back infeasible.
    const std::string gr_path = write_file("fig3.gr", gen.output);
    const CliResult zero = run_cli("oracle " + gr_path + " --k 0");
    CHECK(zero.exit_code == 2);
}

TEST_CASE("bench reports per size times and ratios") {
    const CliResult res = run_cli("bench --sizes 100,200");
    CHECK(res.exit_code == 0);
    CHECK(contains(res.output, "bench: path-scaling\n"));
    CHECK(contains(res.output, "sizes: 100 200\n"));
    CHECK(contains(res.output, "opt-100: 1\n"));
    CHECK(contains(res.output, "opt-200: 1\n"));
    CHECK(contains(res.output, "time-ms-100: "));
    CHECK(contains(res.output, "ratio-200/100: "));

    const CliResult json = run_cli("bench --sizes 100,200 --json");
    CHECK(json.exit_code == 0);
    const nlohmann::json j = nlohmann::json::parse(json.output);
    CHECK(j.at("sizes") == nlohmann::json({100, 200}));
    CHECK(j.at("runs").size() == 2);
    CHECK(j.at("runs")[0].at("opt").get<std::int64_t>() == 1);
    CHECK(j.at("ratios").size() == 1);
}

TEST_CASE("input problems exit with one and name the culprit") {
    const CliResult missing = run_cli("solve-tree no_such_file.gr");
    CHECK(missing.exit_code == 1);
    CHECK(contains(missing.output, "no_such_file.gr"));

    const CliResult unknown = run_cli("solve-tree " + fig1_gr() + " --bogus");
    CHECK(unknown.exit_code == 1);

    const CliResult bad_delete = run_cli("verify " + fig1_gr() + " --delete 0");
    CHECK(bad_delete.exit_code == 1);
    CHECK(contains(bad_delete.output, "out of range"));

    const CliResult dup_delete = run_cli("verify " + fig1_gr() + " --delete 8,8");
    CHECK(dup_delete.exit_code == 1);

    const CliResult no_k = run_cli("solve-cw --expr " + k2_cwx() + " --fpt");
    CHECK(no_k.exit_code == 1);

    const std::string bad = write_file("bad.gr", "p x y\n");
    const CliResult malformed = run_cli("solve-tree " + bad);
    CHECK(malformed.exit_code == 1);
    CHECK(contains(malformed.output, "bad.gr:1"));

    const CliResult no_sub = run_cli("");
    CHECK(no_sub.exit_code == 1);

    const CliResult help = run_cli("--help");
    CHECK(help.exit_code == 0);
    CHECK(contains(help.output, "Subcommands"));
}

}  // TEST_SUITE

}  // namespace muvc
