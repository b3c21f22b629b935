// muvc: exact solvers, oracles, verification, and instance generation for
// the smallest deletion set whose removal leaves a unique minimum vertex
// cover.
//
// Usage:
//   muvc solve-tree <instance.gr> [--verify] [--json] [--threads N]
//   muvc solve-tw <instance.gr> [--td <file.td>] [--truncate-degree]
//                 [--verify] [--json]
//   muvc solve-cw --expr <file.cwx> [--fpt --k K] [--verify] [--json]
//   muvc oracle <instance.gr> [--k K] [--verify] [--json]
//   muvc pauvc-oracle <instance.gr> [--json]
//   muvc verify <instance.gr> [--delete 8,9] [--json]
//   muvc gen-gk --k K
//   muvc gen-hardness <formula> [--roles <file.roles>]
//   muvc gen-random --n N [--kind tree|gnp|cograph] [--p P] [--seed S]
//   muvc bench [--sizes 250000,500000,1000000] [--threads N] [--json]
//
// Generators write the instance to stdout; solvers print a line-oriented
// key:value report, or the same values as JSON with --json. Witness vertex
// ids are 1-based to match the input files. Exit codes: 0 on success, 2
// when a budgeted run proves no witness within k exists, 1 on input errors.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "muvc/cw_expression.hpp"
#include "muvc/cw_solver.hpp"
#include "muvc/generators.hpp"
#include "muvc/graph.hpp"
#include "muvc/min_vc.hpp"
#include "muvc/oracle.hpp"
#include "muvc/report.hpp"
#include "muvc/tree_decomposition.hpp"
#include "muvc/tree_solver.hpp"
#include "muvc/tw_solver.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

double round3(double x) { return std::round(x * 1000.0) / 1000.0; }

std::string fixed3(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", round3(x));
    return buf;
}

int emit_report(const muvc::RunReport& r, bool json) {
    std::cout << (json ? muvc::render_json(r) : muvc::render_text(r));
    if (!r.feasible) {
        return 2;
    }
    return r.verification == "failed" ? 1 : 0;
}

void maybe_verify(const muvc::Graph& g, muvc::RunReport& r, bool verify) {
    if (verify && r.feasible) {
        muvc::verify_report(g, r);
        if (r.verification == "failed") {
            std::cerr << "error: verification failed, the reported witness does "
                         "not leave the reported unique cover\n";
        }
    }
}

// Comment header placed above generated instances; the parsers skip it.
void emit_generated_header(const std::string& what, std::uint64_t seed) {
    std::cout << "# muvc " << what << "\n"
              << "# seed: " << seed << "\n"
              << "# tie-break: " << muvc::kTieBreakPolicy << "\n";
}

muvc::VertexSet parse_deletions(const std::vector<std::int64_t>& ids,
                                const muvc::Graph& g) {
    muvc::VertexSet out;
    out.reserve(ids.size());
    for (std::int64_t id : ids) {
        if (id < 1 || id > g.vertex_count()) {
            throw muvc::GraphError("--delete vertex " + std::to_string(id) +
                                   " out of range [1, " +
                                   std::to_string(g.vertex_count()) + "]");
        }
        out.push_back(static_cast<muvc::Vertex>(id - 1));
    }
    out = muvc::make_vertex_set(out);
    if (out.size() != ids.size()) {
        throw muvc::GraphError("--delete lists a vertex twice");
    }
    return out;
}

struct SolveFlags {
    bool json = false;
    bool verify = false;
    std::uint64_t seed = 0;
};

void add_solve_flags(CLI::App* sub, SolveFlags& flags) {
    sub->add_flag("--json", flags.json, "Print the report as JSON");
    sub->add_flag("--verify", flags.verify,
                  "Re-check the witness with the uniqueness verifier");
    sub->add_option("--seed", flags.seed, "Seed echoed in the report header");
}

int run_solve_tree(const std::string& path, const SolveFlags& flags, int threads) {
    const muvc::Graph g = muvc::load_gr(path);
    muvc::TreeSolveOptions options;
    options.threads = threads;
    const auto start = Clock::now();
    const muvc::TreeSolveResult res = muvc::solve_muvc_tree(g, options);
    muvc::RunReport r;
    r.wall_ms = elapsed_ms(start);
    r.solver = "tree";
    r.instance = path;
    r.seed = flags.seed;
    r.opt = res.opt;
    r.witness = res.deletions;
    r.cover = res.unique_cover;
    r.cover_size = res.cover_size;
    maybe_verify(g, r, flags.verify);
    return emit_report(r, flags.json);
}

int run_solve_tw(const std::string& path, const std::string& td_path,
                 bool truncate, const SolveFlags& flags) {
    const muvc::Graph g = muvc::load_gr(path);
    muvc::TwSolveOptions options;
    options.truncate_by_degree = truncate;
    const auto start = Clock::now();
    muvc::TwSolveResult res;
    if (td_path.empty()) {
        res = muvc::solve_muvc_tw(g, options);
    } else {
        const muvc::TreeDecomposition td = muvc::load_td(td_path);
        res = muvc::solve_muvc_tw(g, td, options);
    }
    muvc::RunReport r;
    r.wall_ms = elapsed_ms(start);
    r.solver = "tw";
    r.instance = path;
    r.seed = flags.seed;
    r.opt = res.opt;
    r.witness = res.deletions;
    r.cover = res.unique_cover;
    r.cover_size = res.cover_size;
    maybe_verify(g, r, flags.verify);
    return emit_report(r, flags.json);
}

int run_solve_cw(const std::string& expr_path, bool fpt, std::int64_t k,
                 const SolveFlags& flags) {
    const muvc::CwExpression e = muvc::load_cw_expression(expr_path);
    const auto start = Clock::now();
    const muvc::CwSolveResult res =
        fpt ? muvc::solve_muvc_cw_fpt(e, k) : muvc::solve_muvc_cw(e);
    muvc::RunReport r;
    r.wall_ms = elapsed_ms(start);
    r.solver = fpt ? "cw-fpt" : "cw";
    r.instance = expr_path;
    r.seed = flags.seed;
    if (!res.feasible) {
        r.feasible = false;
        r.status = "infeasible within k=" + std::to_string(k);
        return emit_report(r, flags.json);
    }
    r.opt = res.opt;
    r.witness = res.deletions;
    r.cover = res.unique_cover;
    r.cover_size = res.cover_size;
    if (flags.verify) {
        const muvc::LabeledGraph lg = muvc::eval_cw_expression(e);
        maybe_verify(lg.graph, r, true);
    }
    return emit_report(r, flags.json);
}

int run_oracle(const std::string& path, std::optional<std::int64_t> k,
               const SolveFlags& flags) {
    const muvc::Graph g = muvc::load_gr(path);
    const auto start = Clock::now();
    std::optional<int> budget;
    if (k.has_value()) {
        budget = static_cast<int>(*k);
    }
    const muvc::MuvcOracleResult res = muvc::solve_muvc_bruteforce(g, budget);
    muvc::RunReport r;
    r.wall_ms = elapsed_ms(start);
    r.solver = "oracle";
    r.instance = path;
    r.seed = flags.seed;
    if (!res.feasible) {
        r.feasible = false;
        r.status = "infeasible within k=" + std::to_string(*k);
        return emit_report(r, flags.json);
    }
    r.opt = res.opt;
    r.witness = res.deletions;
    r.cover = res.unique_cover;
    r.cover_size = static_cast<std::int64_t>(res.unique_cover.size());
    maybe_verify(g, r, flags.verify);
    return emit_report(r, flags.json);
}

int run_pauvc_oracle(const std::string& path, const SolveFlags& flags) {
    const muvc::Graph g = muvc::load_gr(path);
    const auto start = Clock::now();
    const muvc::PauvcOracleResult res = muvc::solve_pauvc_bruteforce(g);
    muvc::RunReport r;
    r.wall_ms = elapsed_ms(start);
    r.solver = "pauvc-oracle";
    r.instance = path;
    r.seed = flags.seed;
    r.witness_key = "pinned";
    if (!res.feasible) {
        r.feasible = false;
        r.status = "infeasible";
        return emit_report(r, flags.json);
    }
    r.opt = res.opt;
    r.witness = res.pinned;
    r.cover = res.cover;
    r.cover_size = static_cast<std::int64_t>(res.cover.size());
    return emit_report(r, flags.json);
}

int run_verify(const std::string& path, const std::vector<std::int64_t>& ids,
               const SolveFlags& flags) {
    const muvc::Graph g = muvc::load_gr(path);
    const muvc::VertexSet deleted = parse_deletions(ids, g);
    const std::int64_t mvc = muvc::min_vc_size(g);
    const muvc::InducedSubgraph sub = muvc::delete_vertices(g, deleted);
    const muvc::UniquenessResult res = muvc::is_unique_min_vc(sub.graph);
    muvc::VertexSet cover;
    cover.reserve(res.cover.size());
    for (muvc::Vertex v : res.cover) {
        cover.push_back(sub.to_original[static_cast<std::size_t>(v)]);
    }
    cover = muvc::make_vertex_set(cover);
    if (flags.json) {
        nlohmann::json j;
        j["seed"] = flags.seed;
        j["tie-break"] = muvc::kTieBreakPolicy;
        j["instance"] = path;
        j["mvc"] = mvc;
        std::vector<std::int64_t> del_1based;
        for (muvc::Vertex v : deleted) {
            del_1based.push_back(static_cast<std::int64_t>(v) + 1);
        }
        std::vector<std::int64_t> cover_1based;
        for (muvc::Vertex v : cover) {
            cover_1based.push_back(static_cast<std::int64_t>(v) + 1);
        }
        j["deleted"] = del_1based;
        j["unique"] = res.unique;
        j["cover"] = cover_1based;
        j["cover-size"] = static_cast<std::int64_t>(cover.size());
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "seed: " << flags.seed << "\n"
                  << "tie-break: " << muvc::kTieBreakPolicy << "\n"
                  << "instance: " << path << "\n"
                  << "mvc: " << mvc << "\n"
                  << "deleted: " << muvc::format_vertices_1based(deleted) << "\n"
                  << "unique: " << (res.unique ? "true" : "false") << "\n"
                  << "cover: " << muvc::format_vertices_1based(cover) << "\n"
                  << "cover-size: " << cover.size() << "\n";
    }
    return 0;
}

int run_gen_gk(int k, std::uint64_t seed) {
    const muvc::Graph g = muvc::gen_gk(k);
    emit_generated_header("gen-gk k=" + std::to_string(k), seed);
    std::cout << muvc::format_gr(g);
    return 0;
}

int run_gen_hardness(const std::string& formula_path, const std::string& roles_path,
                     std::uint64_t seed) {
    const muvc::TypedFormula f = muvc::load_formula(formula_path);
    const muvc::GadgetGraph g = muvc::gen_hardness_instance(f);
    if (!roles_path.empty()) {
        std::ofstream out(roles_path);
        if (!out) {
            throw muvc::GraphError("cannot write " + roles_path);
        }
        out << muvc::format_roles(g);
    }
    emit_generated_header("gen-hardness " + formula_path, seed);
    std::cout << muvc::format_gr(g.graph);
    return 0;
}

int run_gen_random(muvc::Vertex n, const std::string& kind, double p,
                   std::uint64_t seed) {
    emit_generated_header("gen-random kind=" + kind + " n=" + std::to_string(n),
                          seed);
    if (kind == "tree") {
        std::cout << muvc::format_gr(muvc::gen_random_tree(n, seed));
    } else if (kind == "gnp") {
        std::cout << muvc::format_gr(muvc::gen_random_graph(n, p, seed));
    } else {
        const muvc::Cotree ct = muvc::gen_random_cotree(n, seed);
        std::cout << muvc::format_cw_expression(muvc::cw_cograph_expression(ct));
    }
    return 0;
}

muvc::Graph path_graph(muvc::Vertex n) {
    muvc::Graph g(n);
    for (muvc::Vertex v = 0; v + 1 < n; ++v) {
        g.add_edge(v, v + 1);
    }
    return g;
}

int run_bench(const std::vector<std::int64_t>& sizes, int threads,
              const SolveFlags& flags) {
    muvc::TreeSolveOptions options;
    options.threads = threads;
    std::vector<std::int64_t> opts;
    std::vector<double> times;
    for (std::int64_t n : sizes) {
        if (n < 1) {
            throw muvc::GraphError("--sizes entries must be positive");
        }
        const muvc::Graph g = path_graph(static_cast<muvc::Vertex>(n));
        const auto start = Clock::now();
        const muvc::TreeSolveResult res = muvc::solve_muvc_tree(g, options);
        times.push_back(elapsed_ms(start));
        opts.push_back(res.opt);
    }
    std::vector<double> ratios;
    for (std::size_t i = 1; i < times.size(); ++i) {
        ratios.push_back(round3(times[i] / std::max(times[i - 1], 1e-3)));
    }
    if (flags.json) {
        nlohmann::json j;
        j["seed"] = flags.seed;
        j["tie-break"] = muvc::kTieBreakPolicy;
        j["solver"] = "tree";
        j["bench"] = "path-scaling";
        j["sizes"] = sizes;
        nlohmann::json runs = nlohmann::json::array();
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            runs.push_back({{"n", sizes[i]},
                            {"opt", opts[i]},
                            {"time-ms", round3(times[i])}});
        }
        j["runs"] = runs;
        j["ratios"] = ratios;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "seed: " << flags.seed << "\n"
                  << "tie-break: " << muvc::kTieBreakPolicy << "\n"
                  << "solver: tree\n"
                  << "bench: path-scaling\n";
        std::cout << "sizes:";
        for (std::int64_t n : sizes) {
            std::cout << " " << n;
        }
        std::cout << "\n";
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            std::cout << "opt-" << sizes[i] << ": " << opts[i] << "\n"
                      << "time-ms-" << sizes[i] << ": " << fixed3(times[i]) << "\n";
        }
        for (std::size_t i = 0; i < ratios.size(); ++i) {
            std::cout << "ratio-" << sizes[i + 1] << "/" << sizes[i] << ": "
                      << fixed3(ratios[i]) << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact solvers for the smallest deletion set leaving a unique "
                 "minimum vertex cover"};
    app.require_subcommand(1);

    std::string instance;
    std::string td_path;
    std::string expr_path;
    std::string roles_path;
    std::string formula_path;
    std::string kind = "tree";
    std::vector<std::int64_t> delete_ids;
    std::vector<std::int64_t> sizes{250000, 500000, 1000000};
    std::int64_t k = 0;
    std::int64_t gk_k = 3;
    std::int64_t n = 10;
    double p = 0.5;
    int threads = 1;
    bool fpt = false;
    bool truncate = false;
    SolveFlags tree_flags, tw_flags, cw_flags, oracle_flags, pauvc_flags,
        verify_flags, bench_flags;
    std::uint64_t gen_seed = 0;

    CLI::App* solve_tree =
        app.add_subcommand("solve-tree", "Linear-time solver for forests");
    solve_tree->add_option("instance", instance, "Graph file (.gr)")->required();
    solve_tree->add_option("--threads", threads, "Worker threads for components");
    add_solve_flags(solve_tree, tree_flags);

    CLI::App* solve_tw = app.add_subcommand(
        "solve-tw", "Dynamic program over a tree decomposition");
    solve_tw->add_option("instance", instance, "Graph file (.gr)")->required();
    solve_tw->add_option("--td", td_path,
                         "Tree decomposition file; forests need none");
    solve_tw->add_flag("--truncate-degree", truncate,
                       "Drop profile entries beyond the degree bound");
    add_solve_flags(solve_tw, tw_flags);

    CLI::App* solve_cw = app.add_subcommand(
        "solve-cw", "Dynamic program over a clique-width expression");
    CLI::Option* expr_opt =
        solve_cw->add_option("--expr", expr_path, "Expression file (.cwx)");
    expr_opt->required();
    CLI::Option* k_opt =
        solve_cw->add_option("--k", k, "Deletion budget for --fpt");
    solve_cw->add_flag("--fpt", fpt, "Budgeted gap-keyed tables")->needs(k_opt);
    add_solve_flags(solve_cw, cw_flags);

    CLI::App* oracle = app.add_subcommand(
        "oracle", "Brute-force solver for cross-checking");
    oracle->add_option("instance", instance, "Graph file (.gr)")->required();
    CLI::Option* oracle_k =
        oracle->add_option("--k", k, "Stop after deletion sets of this size");
    add_solve_flags(oracle, oracle_flags);

    CLI::App* pauvc = app.add_subcommand(
        "pauvc-oracle", "Brute-force smallest set pinned to one minimum cover");
    pauvc->add_option("instance", instance, "Graph file (.gr)")->required();
    add_solve_flags(pauvc, pauvc_flags);

    CLI::App* verify = app.add_subcommand(
        "verify", "Check uniqueness after deleting the given vertices");
    verify->add_option("instance", instance, "Graph file (.gr)")->required();
    verify->add_option("--delete", delete_ids, "Comma-separated 1-based ids")
        ->delimiter(',');
    add_solve_flags(verify, verify_flags);

    CLI::App* gen_gk_cmd =
        app.add_subcommand("gen-gk", "Pendant-path separation family member");
    gen_gk_cmd->add_option("--k", gk_k, "Family index, at least 3")->required();
    gen_gk_cmd->add_option("--seed", gen_seed, "Seed echoed in the header");

    CLI::App* gen_hardness = app.add_subcommand(
        "gen-hardness", "Gadget instance from a typed 3CNF formula");
    gen_hardness->add_option("formula", formula_path, "Formula file")->required();
    gen_hardness->add_option("--roles", roles_path,
                             "Write the vertex role sidecar here");
    gen_hardness->add_option("--seed", gen_seed, "Seed echoed in the header");

    CLI::App* gen_random =
        app.add_subcommand("gen-random", "Seeded random instance");
    gen_random->add_option("--n", n, "Vertex count")->required();
    CLI::Option* p_opt =
        gen_random->add_option("--p", p, "Edge probability for gnp");
    gen_random->add_option("--kind", kind, "tree, gnp, or cograph")
        ->check(CLI::IsMember({"tree", "gnp", "cograph"}));
    gen_random->add_option("--seed", gen_seed, "PRNG seed");

    CLI::App* bench = app.add_subcommand(
        "bench", "Time the forest solver on growing paths");
    bench->add_option("--sizes", sizes, "Comma-separated path lengths")
        ->delimiter(',');
    bench->add_option("--threads", threads, "Worker threads for components");
    add_solve_flags(bench, bench_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);
        }
        app.exit(e);
        return 1;
    }

    try {
        if (*solve_tree) {
            return run_solve_tree(instance, tree_flags, threads);
        }
        if (*solve_tw) {
            return run_solve_tw(instance, td_path, truncate, tw_flags);
        }
        if (*solve_cw) {
            return run_solve_cw(expr_path, fpt, k, cw_flags);
        }
        if (*oracle) {
            std::optional<std::int64_t> budget;
            if (oracle_k->count() > 0) {
                budget = k;
            }
            return run_oracle(instance, budget, oracle_flags);
        }
        if (*pauvc) {
            return run_pauvc_oracle(instance, pauvc_flags);
        }
        if (*verify) {
            return run_verify(instance, delete_ids, verify_flags);
        }
        if (*gen_gk_cmd) {
            return run_gen_gk(static_cast<int>(gk_k), gen_seed);
        }
        if (*gen_hardness) {
            return run_gen_hardness(formula_path, roles_path, gen_seed);
        }
        if (*gen_random) {
            if (kind == "gnp" && p_opt->count() == 0) {
                throw muvc::GraphError("gen-random --kind gnp requires --p");
            }
            return run_gen_random(static_cast<muvc::Vertex>(n), kind, p, gen_seed);
        }
        if (*bench) {
            return run_bench(sizes, threads, bench_flags);
        }
    } catch (const muvc::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const muvc::GraphError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
