#include <random>

#include "doctest.h"
#include "muvc/cw_expression.hpp"
#include "muvc/cw_solver.hpp"
#include "muvc/graph.hpp"
#include "muvc/min_vc.hpp"
#include "muvc/oracle.hpp"
#include "muvc/tree_solver.hpp"
#include "support/exhaustive.hpp"

using namespace muvc;

namespace {

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

CwExpression k2_expression() {
    return parse_cw_expression_text("(eta 1 2 (union (v 1 a) (v 2 b)))");
}

void check_result(const Graph& g, const CwSolveResult& r) {
    REQUIRE(r.feasible);
    REQUIRE(static_cast<std::int64_t>(r.deletions.size()) == r.opt);
    const InducedSubgraph rest = delete_vertices(g, r.deletions);
    const UniquenessResult uq = is_unique_min_vc(rest.graph);
    CHECK(uq.unique);
    VertexSet mapped;
    for (Vertex v : uq.cover) {
        mapped.push_back(rest.to_original[static_cast<std::size_t>(v)]);
    }
    CHECK(mapped == r.unique_cover);
    CHECK(r.cover_size == static_cast<std::int64_t>(r.unique_cover.size()));
}

// Builder corpus shared by the equivalence and budget suites.
std::vector<CwExpression> small_corpus(std::mt19937& rng) {
    std::vector<CwExpression> out;
    for (Vertex n = 1; n <= 9; n += 2) {
        out.push_back(cw_path_expression(n));
    }
    for (int round = 0; round < 8; ++round) {
        out.push_back(cw_tree_expression(
            muvc::testing::random_attachment_tree(4 + round, rng)));
    }
    for (int round = 0; round < 8; ++round) {
        out.push_back(cw_cograph_expression(
            muvc::testing::random_cotree(3 + round % 6, rng)));
    }
    return out;
}

}  // namespace

TEST_SUITE("cw_solver") {

TEST_CASE("singleton characteristics") {
    const CwChar kept = cw_singleton_kept(2, 1);
    CHECK(kept.alpha == std::vector<std::int32_t>{0, 1, 0, 1});
    CHECK(kept.beta == std::vector<std::uint8_t>{1, 1, 1, 1});
    const CwChar gone = cw_singleton_deleted(2);
    CHECK(gone.alpha == std::vector<std::int32_t>{0, 0, 0, 0});
    CHECK(gone.beta == std::vector<std::uint8_t>{1, 1, 1, 1});
    CHECK_THROWS_AS(cw_singleton_kept(2, 3), GraphError);
    CHECK_THROWS_AS(cw_singleton_kept(13, 1), GraphError);
}

TEST_CASE("connect multiplicity branches") {
    // Subset order over labels {1, 2}: {}, {1}, {2}, {1,2}.
    CwChar lower;
    lower.alpha = {0, 1, 2, 2};
    lower.beta = {1, 1, 2, 1};
    const CwChar a = cw_apply_connect(lower, 1, 2);
    CHECK(a.alpha[0] == 1);
    CHECK(a.beta[0] == 1);  // the smaller branch decides

    CwChar higher;
    higher.alpha = {0, 2, 1, 2};
    higher.beta = {1, 2, 1, 1};
    const CwChar b = cw_apply_connect(higher, 1, 2);
    CHECK(b.alpha[0] == 1);
    CHECK(b.beta[0] == 1);  // the other branch decides

    CwChar tie_same;
    tie_same.alpha = {0, 1, 1, 1};
    tie_same.beta = {1, 1, 1, 1};
    const CwChar c = cw_apply_connect(tie_same, 1, 2);
    CHECK(c.alpha[0] == 1);
    CHECK(c.beta[0] == 1);  // both branches name the same unique cover

    CwChar tie_apart;
    tie_apart.alpha = {0, 1, 1, 2};
    tie_apart.beta = {1, 1, 1, 1};
    const CwChar d = cw_apply_connect(tie_apart, 1, 2);
    CHECK(d.alpha[0] == 1);
    CHECK(d.beta[0] == 2);  // two genuinely different covers

    CwChar tie_double;
    tie_double.alpha = {0, 1, 1, 1};
    tie_double.beta = {1, 2, 1, 1};
    const CwChar f = cw_apply_connect(tie_double, 1, 2);
    CHECK(f.beta[0] == 2);  // one side alone offers two optimal covers

    // Slots intersecting {i, j} copy through untouched.
    CHECK(d.alpha[1] == 1);
    CHECK(d.beta[1] == 1);
    CHECK(d.alpha[3] == 2);

    CHECK_THROWS_AS(cw_apply_connect(lower, 1, 1), GraphError);
    CHECK_THROWS_AS(cw_apply_connect(lower, 1, 3), GraphError);
}

TEST_CASE("relabel folds one class into another") {
    CwChar chr;
    chr.alpha = {0, 1, 2, 3};
    chr.beta = {1, 2, 1, 2};
    const CwChar out = cw_apply_relabel(chr, 1, 2);
    // j in I: read I with i added; j not in I: read I with i removed.
    CHECK(out.alpha == std::vector<std::int32_t>{0, 0, 3, 3});
    CHECK(out.beta == std::vector<std::uint8_t>{1, 1, 2, 2});
}

TEST_CASE("union adds sizes and multiplies multiplicities") {
    CwChar a;
    a.alpha = {0, 1, 0, 1};
    a.beta = {1, 2, 1, 1};
    CwChar b;
    b.alpha = {0, 0, 1, 1};
    b.beta = {2, 1, 1, 2};
    const CwChar u = cw_combine_union(a, b);
    CHECK(u.alpha == std::vector<std::int32_t>{0, 1, 1, 2});
    CHECK(u.beta == std::vector<std::uint8_t>{2, 2, 1, 2});
}

TEST_CASE("first pass characteristics of the single edge") {
    const CwExpression e = k2_expression();
    const std::vector<CwChar> chars = empty_set_characteristics(e);
    // Node 2 is the union, node 3 the connect (root).
    CHECK(chars[2].alpha == std::vector<std::int32_t>{0, 1, 1, 2});
    CHECK(chars[3].alpha[0] == 1);
    CHECK(chars[3].beta[0] == 2);
}

TEST_CASE("single edge table holds all four deletion classes") {
    const std::vector<CwTableEntry> table = cw_dp(k2_expression());
    REQUIRE(table.size() == 4);
    int size_counts[3] = {0, 0, 0};
    for (const CwTableEntry& entry : table) {
        REQUIRE(entry.size <= 2);
        ++size_counts[entry.size];
        if (entry.size == 0) {
            CHECK(entry.chr.alpha[0] == 1);
            CHECK(entry.chr.beta[0] == 2);
        } else {
            CHECK(entry.chr.beta[0] == 1);
        }
    }
    CHECK(size_counts[0] == 1);
    CHECK(size_counts[1] == 2);
    CHECK(size_counts[2] == 1);
}

TEST_CASE("single edge solves to one deletion") {
    const CwSolveResult r = solve_muvc_cw(k2_expression());
    CHECK(r.feasible);
    CHECK(r.opt == 1);
    CHECK(r.deletions == VertexSet{0});
    CHECK(r.unique_cover.empty());
    CHECK(r.cover_size == 0);
}

TEST_CASE("fixed instances through the builders") {
    const CwSolveResult p3 = solve_muvc_cw(cw_path_expression(3));
    CHECK(p3.opt == 0);
    CHECK(p3.unique_cover == VertexSet{1});

    Cotree k3;
    k3.nodes.push_back(CotreeNode{CotreeKind::Leaf, 0, -1, -1});
    k3.nodes.push_back(CotreeNode{CotreeKind::Leaf, 1, -1, -1});
    k3.nodes.push_back(CotreeNode{CotreeKind::Join, -1, 0, 1});
    k3.nodes.push_back(CotreeNode{CotreeKind::Leaf, 2, -1, -1});
    k3.nodes.push_back(CotreeNode{CotreeKind::Join, -1, 2, 3});
    // Deleting one triangle vertex leaves a single edge with two minimum
    // covers, so two deletions are needed.
    const CwSolveResult triangle = solve_muvc_cw(cw_cograph_expression(k3));
    CHECK(triangle.opt == 2);
    check_result(eval_cotree(k3), triangle);

    const Graph spider = twin_spider();
    const CwSolveResult fig = solve_muvc_cw(cw_tree_expression(spider));
    CHECK(fig.opt == 2);
    CHECK(fig.deletions == VertexSet{7, 8});
    CHECK(fig.unique_cover == VertexSet{1, 3, 5});
    check_result(spider, fig);
}

TEST_CASE("agrees with the exhaustive oracle on the builder corpus") {
    std::mt19937 rng(3001);
    CwSolveOptions strict;
    strict.check_invariants = true;
    for (const CwExpression& e : small_corpus(rng)) {
        const Graph g = eval_cw_expression(e).graph;
        CAPTURE(format_cw_expression(e));
        const MuvcOracleResult expect = solve_muvc_bruteforce(g);
        const CwSolveResult got = solve_muvc_cw(e, strict);
        CHECK(got.opt == expect.opt);
        check_result(g, got);
    }
}

TEST_CASE("matches the forest solver on larger trees") {
    std::mt19937 rng(3011);
    for (int round = 0; round < 6; ++round) {
        const Graph tree = muvc::testing::random_attachment_tree(30, rng);
        const TreeSolveResult expect = solve_muvc_tree(tree);
        const CwSolveResult got = solve_muvc_cw(cw_tree_expression(tree));
        CHECK(got.opt == expect.opt);
        check_result(tree, got);
    }
}

TEST_CASE("budgeted mode prunes without changing answers") {
    std::mt19937 rng(3019);
    CwSolveOptions strict;
    strict.check_invariants = true;
    for (const CwExpression& e : small_corpus(rng)) {
        CAPTURE(format_cw_expression(e));
        const CwSolveResult full = solve_muvc_cw(e);
        const Vertex n = cw_vertex_count(e);
        for (std::int64_t k : {full.opt, full.opt + 1, static_cast<std::int64_t>(n)}) {
            CwSolveStats stats;
            const CwSolveResult bounded = solve_muvc_cw_fpt(e, k, strict, &stats);
            REQUIRE(bounded.feasible);
            CHECK(bounded.opt == full.opt);
            check_result(eval_cw_expression(e).graph, bounded);
        }
        if (full.opt > 0) {
            const CwSolveResult blocked = solve_muvc_cw_fpt(e, full.opt - 1);
            CHECK(!blocked.feasible);
            CHECK(blocked.opt == -1);
        }
    }
    const CwSolveResult zero = solve_muvc_cw_fpt(k2_expression(), 0);
    CHECK(!zero.feasible);
    CHECK_THROWS_AS(solve_muvc_cw_fpt(k2_expression(), -1), GraphError);
}

TEST_CASE("stats describe the sweep") {
    CwSolveStats stats;
    const CwExpression e = cw_tree_expression(twin_spider());
    solve_muvc_cw(e, {}, &stats);
    CHECK(stats.dp_nodes == e.nodes.size());
    CHECK(stats.width == 3);
    CHECK(stats.max_table_entries >= 2);
    CHECK(stats.total_entries >= stats.max_table_entries);
    CHECK(stats.pruned_entries == 0);

    CwSolveStats bounded;
    solve_muvc_cw_fpt(e, 2, {}, &bounded);
    CHECK(bounded.pruned_entries > 0);
}

TEST_CASE("deterministic across repeated runs") {
    std::mt19937 rng(3023);
    const Graph tree = muvc::testing::random_attachment_tree(16, rng);
    const CwExpression e = cw_tree_expression(tree);
    const CwSolveResult first = solve_muvc_cw(e);
    for (int repeat = 0; repeat < 3; ++repeat) {
        const CwSolveResult again = solve_muvc_cw(e);
        CHECK(again.opt == first.opt);
        CHECK(again.deletions == first.deletions);
        CHECK(again.unique_cover == first.unique_cover);
    }
}

}  // TEST_SUITE
