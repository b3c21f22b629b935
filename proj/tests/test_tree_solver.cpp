#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "muvc/graph.hpp"
#include "muvc/min_vc.hpp"
#include "muvc/oracle.hpp"
#include "muvc/tree_solver.hpp"
#include "support/exhaustive.hpp"

using namespace muvc;

namespace {

Graph path(Vertex n) {
    Graph g(n);
    for (Vertex v = 0; v + 1 < n; ++v) {
        g.add_edge(v, v + 1);
    }
    return g;
}

Graph twin_spider() {
    Graph g(9);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 3);
    g.add_edge(3, 4);
    g.add_edge(0, 5);
    g.add_edge(5, 6);
    g.add_edge(0, 7);
    g.add_edge(0, 8);
    return g;
}

Graph relabel(const Graph& g, const std::vector<Vertex>& perm) {
    Graph out(g.vertex_count());
    for (const auto& [u, v] : g.edges()) {
        out.add_edge(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
    }
    return out;
}

// The residual graph after the reported deletions must have exactly the
// reported cover as its one minimum cover.
void check_witness(const Graph& g, const TreeSolveResult& r) {
    REQUIRE(static_cast<std::int64_t>(r.deletions.size()) == r.opt);
    InducedSubgraph rest = delete_vertices(g, r.deletions);
    UniquenessResult u = is_unique_min_vc(rest.graph);
    CHECK(u.unique);
    VertexSet mapped;
    for (Vertex v : u.cover) {
        mapped.push_back(rest.to_original[static_cast<std::size_t>(v)]);
    }
    CHECK(mapped == r.unique_cover);
    CHECK(static_cast<std::int64_t>(r.unique_cover.size()) == r.cover_size);
}

}  // namespace

TEST_SUITE("tree_solver") {

TEST_CASE("tiny paths have frozen answers") {
    CHECK(solve_muvc_tree(path(1)).opt == 0);
    CHECK(solve_muvc_tree(path(2)).opt == 1);
    CHECK(solve_muvc_tree(path(3)).opt == 0);
    CHECK(solve_muvc_tree(path(4)).opt == 1);
    CHECK(solve_muvc_tree(path(2)).deletions == VertexSet{1});
    CHECK(solve_muvc_tree(path(3)).deletions.empty());
    CHECK(solve_muvc_tree(path(3)).unique_cover == VertexSet{1});
}

TEST_CASE("even paths need one deletion, odd paths none") {
    for (Vertex n = 1; n <= 40; ++n) {
        TreeSolveResult r = solve_muvc_tree(path(n));
        CHECK(r.opt == (n % 2 == 0 ? 1 : 0));
        check_witness(path(n), r);
    }
}

TEST_CASE("twin spider needs both twins deleted") {
    Graph g = twin_spider();
    TreeSolveResult r = solve_muvc_tree(g);
    CHECK(r.opt == 2);
    CHECK(r.deletions == VertexSet{7, 8});
    CHECK(r.unique_cover == VertexSet{1, 3, 5});
    CHECK(r.cover_size == 3);
    CHECK(r.mvc_size == 4);
    check_witness(g, r);
}

TEST_CASE("stars are already settled") {
    Graph g(6);
    for (Vertex v = 1; v < 6; ++v) {
        g.add_edge(0, v);
    }
    TreeSolveResult r = solve_muvc_tree(g);
    CHECK(r.opt == 0);
    CHECK(r.unique_cover == VertexSet{0});
}

TEST_CASE("forests add up across components") {
    Graph g(7);
    g.add_edge(0, 1);
    g.add_edge(2, 3);
    g.add_edge(4, 5);
    TreeSolveResult r = solve_muvc_tree(g);
    CHECK(r.opt == 3);
    CHECK(r.deletions == VertexSet{1, 3, 5});
    CHECK(r.unique_cover.empty());
    check_witness(g, r);
}

TEST_CASE("non-forest input is rejected") {
    Graph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 0);
    CHECK_THROWS_AS(solve_muvc_tree(g), GraphError);
}

TEST_CASE("matches the bruteforce oracle on random trees") {
    std::mt19937 rng(2024);
    for (int round = 0; round < 80; ++round) {
        const Vertex n = 2 + static_cast<Vertex>(round % 12);
        Graph g = muvc::testing::random_attachment_tree(n, rng);
        TreeSolveResult r = solve_muvc_tree(g);
        MuvcOracleResult o = solve_muvc_bruteforce(g);
        CHECK(r.opt == o.opt);
        check_witness(g, r);
    }
}

TEST_CASE("matches the oracle on random forests") {
    std::mt19937 rng(31);
    for (int round = 0; round < 30; ++round) {
        Graph a = muvc::testing::random_attachment_tree(5, rng);
        Graph b = muvc::testing::random_attachment_tree(6, rng);
        Graph g(11);
        for (const auto& [u, v] : a.edges()) {
            g.add_edge(u, v);
        }
        for (const auto& [u, v] : b.edges()) {
            g.add_edge(u + 5, v + 5);
        }
        TreeSolveResult r = solve_muvc_tree(g);
        MuvcOracleResult o = solve_muvc_bruteforce(g);
        CHECK(r.opt == o.opt);
        check_witness(g, r);
    }
}

TEST_CASE("optimum is invariant under relabeling") {
    std::mt19937 rng(55);
    for (int round = 0; round < 30; ++round) {
        Graph g = muvc::testing::random_attachment_tree(12, rng);
        std::vector<Vertex> perm(12);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        Graph h = relabel(g, perm);
        CHECK(solve_muvc_tree(g).opt == solve_muvc_tree(h).opt);
    }
}

TEST_CASE("exact difference tables collapse onto the compact ones") {
    std::mt19937 rng(808);
    TreeSolveOptions check_opts;
    check_opts.cross_check = true;
    for (int round = 0; round < 25; ++round) {
        const Vertex n = 2 + static_cast<Vertex>(round * 2 % 59);
        Graph g = muvc::testing::random_attachment_tree(n, rng);
        TreeSolveStats stats;
        TreeSolveResult r = solve_muvc_tree(g, check_opts, &stats);
        CHECK(stats.cross_checked);
        CHECK(stats.max_state_slots <= 12);
        CHECK(stats.dp_nodes >= static_cast<std::size_t>(n));
        CHECK(r.opt >= 0);
    }
}

TEST_CASE("threaded runs agree with sequential runs") {
    std::mt19937 rng(4);
    Graph g(40);
    Vertex base = 0;
    for (int comp = 0; comp < 5; ++comp) {
        Graph t = muvc::testing::random_attachment_tree(8, rng);
        for (const auto& [u, v] : t.edges()) {
            g.add_edge(base + u, base + v);
        }
        base += 8;
    }
    TreeSolveResult seq = solve_muvc_tree(g);
    TreeSolveOptions par;
    par.threads = 3;
    TreeSolveResult thr = solve_muvc_tree(g, par);
    CHECK(seq.opt == thr.opt);
    CHECK(seq.deletions == thr.deletions);
    CHECK(seq.unique_cover == thr.unique_cover);
}

TEST_CASE("repeated runs return identical witnesses") {
    std::mt19937 rng(9001);
    Graph g = muvc::testing::random_attachment_tree(30, rng);
    TreeSolveResult first = solve_muvc_tree(g);
    for (int i = 0; i < 4; ++i) {
        TreeSolveResult again = solve_muvc_tree(g);
        CHECK(again.deletions == first.deletions);
        CHECK(again.unique_cover == first.unique_cover);
    }
}

TEST_CASE("a long path stays fast and iterative") {
    const Vertex n = 200000;
    Graph g = path(n);
    TreeSolveStats stats;
    TreeSolveResult r = solve_muvc_tree(g, {}, &stats);
    CHECK(r.opt == 1);
    CHECK(stats.dp_nodes == static_cast<std::size_t>(n));
    CHECK(r.mvc_size == n / 2);
}

}  // TEST_SUITE
