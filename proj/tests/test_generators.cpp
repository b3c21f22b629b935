#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "doctest.h"
#include "muvc/generators.hpp"
#include "muvc/oracle.hpp"
#include "muvc/tree_solver.hpp"

namespace muvc {
namespace {

bool parse_fails(const std::string& text, const std::string& needle) {
    try {
        parse_formula_text(text, "formula");
    } catch (const ParseError& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}

bool build_fails(const TypedFormula& f, const OccurrenceOrder& order,
                 const std::string& needle) {
    try {
        gen_hardness_instance(f, order);
    } catch (const GraphError& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}

const char* kFig3Text =
    "x 2\n"
    "y 2\n"
    "x1 x2 -y1\n"
    "-x1 y1 y2\n";

// Splits a role tag on ':' into its fields.
std::vector<std::string> tag_fields(const std::string& tag) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t colon = tag.find(':', start);
        if (colon == std::string::npos) {
            fields.push_back(tag.substr(start));
            return fields;
        }
        fields.push_back(tag.substr(start, colon - start));
        start = colon + 1;
    }
}

// Recomputes every vertex degree from the construction rules: fixed values
// per tag class, plus one bump for the three ring positions around each
// literal attachment point.
std::vector<int> expected_degrees(const TypedFormula& f, const GadgetGraph& g) {
    std::vector<int> expect(static_cast<std::size_t>(g.graph.vertex_count()), -1);
    for (Vertex v = 0; v < g.graph.vertex_count(); ++v) {
        const auto fields = tag_fields(g.role[static_cast<std::size_t>(v)]);
        const std::string& owner = fields[0];
        const std::string& kind = fields[1];
        int d = -1;
        if (owner[0] == 'c') {
            d = kind == "z" ? 1 : 4;
        } else if (kind[0] == 'v') {
            d = 4;
        } else if (kind[0] == 'u') {
            const int idx = kind[1] - '0';
            d = idx == 1 || idx == 4 ? 5 : (idx == 2 || idx == 5 ? 2 : 1);
        } else if (kind[0] == 'w') {
            d = 3;
        } else {
            REQUIRE(kind[0] == 'z');
            d = 1;
        }
        expect[static_cast<std::size_t>(v)] = d;
    }
    // Attachment bumps, following the default occurrence order.
    std::vector<int> x_seen(static_cast<std::size_t>(f.x_count), 0);
    std::vector<int> y_seen(static_cast<std::size_t>(f.y_count), 0);
    for (const auto& clause : f.clauses) {
        for (const Literal& lit : clause) {
            auto& seen = lit.type_x ? x_seen : y_seen;
            const int j = ++seen[static_cast<std::size_t>(lit.index - 1)];
            const int a = 4 * (j - 1) + (lit.positive ? 2 : 3);
            const auto& ring = lit.type_x ? g.x_colored[static_cast<std::size_t>(lit.index - 1)]
                                          : g.y_colored[static_cast<std::size_t>(lit.index - 1)];
            for (int pos = a - 1; pos <= a + 1; ++pos) {
                ++expect[static_cast<std::size_t>(ring[static_cast<std::size_t>(pos - 1)])];
            }
        }
    }
    return expect;
}

VertexSet switch_vertices(const GadgetGraph& g, int i) {
    const auto& u = g.x_u[static_cast<std::size_t>(i)];
    return make_vertex_set({u[1], u[2], u[4], u[5]});
}

std::size_t intersection_size(const VertexSet& a, const VertexSet& b) {
    std::size_t count = 0;
    for (Vertex v : a) {
        count += set_contains(b, v) ? 1 : 0;
    }
    return count;
}

// The reduction's target equivalence on one formula: the budgeted oracle
// finds a modulator of size x_count exactly when the exhaustive decision
// says yes, and yes-instance witnesses look the way the gadgets force.
void check_reduction(const std::string& text, bool expect_yes) {
    const TypedFormula f = parse_formula_text(text);
    CHECK(uq_one_in_three_sat(f) == expect_yes);
    const GadgetGraph g = gen_hardness_instance(f);
    CHECK(g.graph.max_degree() <= 5);
    const MuvcOracleResult got = solve_muvc_bruteforce(g.graph, f.x_count);
    CHECK(got.feasible == expect_yes);
    if (!expect_yes) {
        return;
    }
    REQUIRE(got.feasible);
    CHECK(got.opt == f.x_count);
    CHECK(got.deletions.size() == static_cast<std::size_t>(f.x_count));
    for (int i = 0; i < f.x_count; ++i) {
        CHECK(intersection_size(switch_vertices(g, i), got.deletions) == 1);
    }
    // The surviving cover takes two triangle corners and the apex from
    // every clause gadget, never the apex pendant.
    for (std::size_t t = 0; t < f.clauses.size(); ++t) {
        CHECK(set_contains(got.unique_cover, g.clause_w[t]));
        CHECK_FALSE(set_contains(got.unique_cover, g.clause_z[t]));
        const auto& l = g.clause_l[t];
        const std::size_t corners =
            intersection_size(make_vertex_set({l[0], l[1], l[2]}), got.unique_cover);
        CHECK(corners == 2);
    }
}

}  // namespace

TEST_SUITE("generators") {

TEST_CASE("separation family members are pendant path trees") {
    const Graph g3 = gen_gk(3);
    const std::vector<std::pair<Vertex, Vertex>> fig{{0, 1}, {0, 3}, {0, 5}, {0, 7},
                                                     {0, 8}, {1, 2}, {3, 4}, {5, 6}};
    CHECK(g3.edges() == fig);
    for (int k = 3; k <= 8; ++k) {
        const Graph g = gen_gk(k);
        CHECK(g.vertex_count() == 9 + 2 * (k - 3));
        CHECK(g.edge_count() == static_cast<std::size_t>(g.vertex_count() - 1));
        CHECK(is_forest(g));
        CHECK(connected_components(g).size() == 1);
        CHECK(g.degree(0) == 5 + (k - 3));
    }
    CHECK_THROWS_AS(gen_gk(2), GraphError);
}

TEST_CASE("separation family keeps a two vertex modulator while pinning grows") {
    for (int k = 3; k <= 7; ++k) {
        CHECK(solve_muvc_tree(gen_gk(k)).opt == 2);
    }
    for (int k = 3; k <= 5; ++k) {
        const Graph g = gen_gk(k);
        const MuvcOracleResult mu = solve_muvc_bruteforce(g);
        CHECK(mu.opt == 2);
        const PauvcOracleResult pau = solve_pauvc_bruteforce(g);
        REQUIRE(pau.feasible);
        CHECK(pau.opt >= k);
    }
    CHECK(solve_pauvc_bruteforce(gen_gk(3)).opt == 3);
}

TEST_CASE("prng reproduces the published stream") {
    SplitMix64 rng(42);
    CHECK(rng.next() == 0xBDD732262FEB6E95ULL);
    CHECK(rng.next() == 0x28EFE333B266F103ULL);
    CHECK(rng.next() == 0x47526757130F9F52ULL);
    SplitMix64 bounded(5);
    const std::vector<std::uint64_t> draws{bounded.next_below(7), bounded.next_below(7),
                                           bounded.next_below(7), bounded.next_below(7),
                                           bounded.next_below(7)};
    CHECK(draws == std::vector<std::uint64_t>{3, 5, 2, 2, 3});
    SplitMix64 unit(9);
    for (int i = 0; i < 32; ++i) {
        const double u = unit.next_unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("random trees are connected and seed stable") {
    CHECK(gen_random_tree(0, 1).vertex_count() == 0);
    CHECK(gen_random_tree(1, 1).vertex_count() == 1);
    CHECK(gen_random_tree(2, 1).edge_count() == 1);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Graph g = gen_random_tree(12, seed);
        CHECK(g.edge_count() == 11);
        CHECK(is_forest(g));
        CHECK(connected_components(g).size() == 1);
        CHECK(gen_random_tree(12, seed).edges() == g.edges());
    }
    CHECK(gen_random_tree(12, 1).edges() != gen_random_tree(12, 2).edges());
}

TEST_CASE("random graphs respect the density dial") {
    CHECK(gen_random_graph(7, 0.0, 3).edge_count() == 0);
    CHECK(gen_random_graph(7, 1.0, 3).edge_count() == 21);
    const Graph g = gen_random_graph(12, 0.5, 11);
    CHECK(gen_random_graph(12, 0.5, 11).edges() == g.edges());
    CHECK(g.edge_count() > 0);
    CHECK(g.edge_count() < 66);
}

TEST_CASE("random cotrees evaluate to graphs of the right size") {
    for (Vertex n = 1; n <= 9; ++n) {
        const Cotree t = gen_random_cotree(n, static_cast<std::uint64_t>(n) * 31 + 1);
        validate_cotree(t);
        const Graph g = eval_cotree(t);
        CHECK(g.vertex_count() == n);
        const Cotree again = gen_random_cotree(n, static_cast<std::uint64_t>(n) * 31 + 1);
        CHECK(eval_cotree(again).edges() == g.edges());
    }
}

TEST_CASE("formula parsing and round trip") {
    const TypedFormula f = parse_formula_text(kFig3Text);
    CHECK(f.x_count == 2);
    CHECK(f.y_count == 2);
    REQUIRE(f.clauses.size() == 2);
    CHECK(f.clauses[0][0].type_x);
    CHECK(f.clauses[0][0].index == 1);
    CHECK(f.clauses[0][0].positive);
    CHECK_FALSE(f.clauses[0][2].type_x);
    CHECK_FALSE(f.clauses[0][2].positive);
    CHECK(f.clauses[1][0].type_x);
    CHECK_FALSE(f.clauses[1][0].positive);
    CHECK(format_formula(f) == kFig3Text);
    const TypedFormula again = parse_formula_text(format_formula(f));
    CHECK(format_formula(again) == kFig3Text);

    const TypedFormula commented = parse_formula_text(
        "# corpus entry\nx 1\n\ny 1  # one of each\nx1 x1 y1\n");
    CHECK(commented.x_count == 1);
    CHECK(commented.clauses.size() == 1);

    CHECK(parse_fails("", "missing variable count headers"));
    CHECK(parse_fails("x 1\n", "missing variable count headers"));
    CHECK(parse_fails("y 1\nx 1\nx1 x1 y1\n", "expected 'x <count>' header"));
    CHECK(parse_fails("x -1\ny 1\n", "malformed header"));
    CHECK(parse_fails("x 1 extra\ny 1\n", "trailing tokens after header"));
    CHECK(parse_fails("x 1\ny 1\nx1 y1\n", "clause needs exactly 3 literals, found 2"));
    CHECK(parse_fails("x 1\ny 1\nx1 y1 y1 y1\n", "clause needs exactly 3 literals"));
    CHECK(parse_fails("x 1\ny 1\nx1 y1 z1\n", "malformed literal 'z1'"));
    CHECK(parse_fails("x 1\ny 1\nx1 --y1 y1\n", "malformed literal '--y1'"));
    CHECK(parse_fails("x 1\ny 1\nx1 y1 x2\n", "variable x2 out of range"));
    CHECK(parse_fails("x 1\ny 1\nx1 y0 y1\n", "variable index must be at least 1"));
    CHECK(parse_fails("x 2\ny 1\nx1 x1 y1\n", "variable x2 never occurs"));
    CHECK_THROWS_AS(load_formula("no_such_file.formula"), ParseError);
}

TEST_CASE("one in three decisions match hand checked formulas") {
    CHECK(uq_one_in_three_sat(parse_formula_text("x 1\ny 1\nx1 x1 y1\n")));
    CHECK_FALSE(uq_one_in_three_sat(parse_formula_text("x 1\ny 0\nx1 x1 x1\n")));
    CHECK_FALSE(uq_one_in_three_sat(parse_formula_text("x 0\ny 3\ny1 y2 y3\n")));
    CHECK(uq_one_in_three_sat(parse_formula_text("x 1\ny 2\nx1 y1 y2\n")));
    CHECK(uq_one_in_three_sat(parse_formula_text("x 3\ny 0\nx1 x2 x3\n")));
    CHECK(uq_one_in_three_sat(parse_formula_text(kFig3Text)));

    // 25 variables trip the exhaustive guard.
    TypedFormula wide;
    wide.x_count = 24;
    wide.y_count = 1;
    for (int i = 0; i < 8; ++i) {
        wide.clauses.push_back({Literal{true, 3 * i + 1, true}, Literal{true, 3 * i + 2, true},
                                Literal{true, 3 * i + 3, true}});
    }
    wide.clauses.push_back({Literal{false, 1, true}, Literal{false, 1, true},
                            Literal{false, 1, true}});
    CHECK_THROWS_AS(uq_one_in_three_sat(wide), GraphError);

    TypedFormula bad;
    bad.x_count = 1;
    bad.y_count = 0;
    bad.clauses.push_back({Literal{true, 1, true}, Literal{true, 2, true},
                           Literal{true, 1, true}});
    CHECK_THROWS_AS(validate_formula(bad), GraphError);
}

TEST_CASE("gadget graph structure freeze") {
    const TypedFormula f = parse_formula_text(kFig3Text);
    const GadgetGraph g = gen_hardness_instance(f);
    CHECK(g.graph.vertex_count() == 102);
    CHECK(g.graph.edge_count() == 146);
    CHECK(g.graph.max_degree() == 5);

    // Clause gadget shape and tags.
    REQUIRE(g.clause_l.size() == 2);
    const auto& l = g.clause_l[0];
    CHECK(g.graph.has_edge(l[0], l[1]));
    CHECK(g.graph.has_edge(l[1], l[2]));
    CHECK(g.graph.has_edge(l[0], l[2]));
    CHECK(g.graph.has_edge(l[0], g.clause_w[0]));
    CHECK(g.graph.has_edge(g.clause_w[0], g.clause_z[0]));
    CHECK(g.role[static_cast<std::size_t>(l[0])] == "c1:l1");
    CHECK(g.role[static_cast<std::size_t>(g.clause_w[0])] == "c1:w");
    CHECK(g.role[static_cast<std::size_t>(g.clause_z[0])] == "c1:z");

    // Variable ring sizes: four colored vertices per occurrence.
    REQUIRE(g.x_colored.size() == 2);
    REQUIRE(g.y_colored.size() == 2);
    CHECK(g.x_colored[0].size() == 8);
    CHECK(g.x_colored[1].size() == 4);
    CHECK(g.y_colored[0].size() == 8);
    CHECK(g.y_colored[1].size() == 4);

    // The type-x closing arc runs through u1 and u4, which also carry the
    // pendant paths.
    const auto& ring = g.x_colored[0];
    const auto& u = g.x_u[0];
    CHECK(g.graph.has_edge(ring[7], u[0]));
    CHECK(g.graph.has_edge(u[0], u[3]));
    CHECK(g.graph.has_edge(u[3], ring[0]));
    CHECK(g.graph.has_edge(u[0], u[1]));
    CHECK(g.graph.has_edge(u[1], u[2]));
    CHECK(g.graph.has_edge(u[3], u[4]));
    CHECK(g.graph.has_edge(u[4], u[5]));
    CHECK(g.role[static_cast<std::size_t>(u[2])] == "x1:u3");

    // Color and ring position tags alternate as documented.
    CHECK(g.role[static_cast<std::size_t>(ring[0])] == "x1:v1:red:outer");
    CHECK(g.role[static_cast<std::size_t>(ring[1])] == "x1:v2:blue:inner");
    CHECK(g.role[static_cast<std::size_t>(ring[2])] == "x1:v3:red:inner");
    CHECK(g.role[static_cast<std::size_t>(ring[3])] == "x1:v4:blue:outer");

    // First wiring step: positive literals hit blue inner vertices, negative
    // ones red, consuming occurrences in clause order.
    CHECK(g.graph.has_edge(g.clause_l[0][0], g.x_colored[0][1]));
    CHECK(g.graph.has_edge(g.clause_l[0][1], g.x_colored[1][1]));
    CHECK(g.graph.has_edge(g.clause_l[0][2], g.y_colored[0][2]));
    CHECK(g.graph.has_edge(g.clause_l[1][0], g.x_colored[0][6]));
    CHECK(g.graph.has_edge(g.clause_l[1][1], g.y_colored[0][5]));
    CHECK(g.graph.has_edge(g.clause_l[1][2], g.y_colored[1][1]));

    // Second wiring step chords for both clauses.
    CHECK(g.graph.has_edge(g.y_colored[0][1], g.x_colored[0][2]));
    CHECK(g.graph.has_edge(g.x_colored[0][0], g.x_colored[1][2]));
    CHECK(g.graph.has_edge(g.x_colored[1][0], g.y_colored[0][3]));
    CHECK(g.graph.has_edge(g.y_colored[1][0], g.x_colored[0][7]));
    CHECK(g.graph.has_edge(g.x_colored[0][5], g.y_colored[0][6]));
    CHECK(g.graph.has_edge(g.y_colored[0][4], g.y_colored[1][2]));

    // Sidecar format and determinism.
    const std::string roles = format_roles(g);
    CHECK(roles.rfind("1 c1:l1\n", 0) == 0);
    CHECK(std::count(roles.begin(), roles.end(), '\n') == 102);
    const GadgetGraph again = gen_hardness_instance(f);
    CHECK(again.graph.edges() == g.graph.edges());
    CHECK(again.role == g.role);
}

TEST_CASE("gadget degrees match the construction table") {
    for (const char* text : {kFig3Text, "x 1\ny 1\nx1 x1 y1\n",
                             "x 1\ny 1\nx1 x1 y1\n-x1 -x1 -y1\n"}) {
        const TypedFormula f = parse_formula_text(text);
        const GadgetGraph g = gen_hardness_instance(f);
        const std::vector<int> expect = expected_degrees(f, g);
        for (Vertex v = 0; v < g.graph.vertex_count(); ++v) {
            CHECK(g.graph.degree(v) == expect[static_cast<std::size_t>(v)]);
        }
    }
}

TEST_CASE("tiny instances match the exhaustive decision") {
    check_reduction("x 1\ny 1\nx1 x1 y1\n", true);
    check_reduction("x 1\ny 0\nx1 x1 x1\n", false);
    check_reduction("x 0\ny 3\ny1 y2 y3\n", false);
    check_reduction("x 1\ny 2\nx1 y1 y2\n", true);
}

TEST_CASE("two clause instances match the exhaustive decision") {
    check_reduction("x 1\ny 2\nx1 y1 y2\nx1 y1 y2\n", true);
    check_reduction("x 1\ny 1\nx1 x1 y1\n-x1 -x1 -y1\n", false);
}

TEST_CASE("occurrence order overrides rewire without changing the answer") {
    const TypedFormula f = parse_formula_text("x 1\ny 1\nx1 x1 y1\n");
    const GadgetGraph by_default = gen_hardness_instance(f);
    const GadgetGraph swapped = gen_hardness_instance(f, {{2, 1, 1}});
    // Slot one consumes the second occurrence under the override.
    CHECK(by_default.graph.has_edge(by_default.clause_l[0][0], by_default.x_colored[0][1]));
    CHECK(swapped.graph.has_edge(swapped.clause_l[0][0], swapped.x_colored[0][5]));
    CHECK(by_default.graph.edges() != swapped.graph.edges());

    const MuvcOracleResult a = solve_muvc_bruteforce(by_default.graph, f.x_count);
    const MuvcOracleResult b = solve_muvc_bruteforce(swapped.graph, f.x_count);
    REQUIRE(a.feasible);
    REQUIRE(b.feasible);
    CHECK(a.opt == b.opt);

    CHECK(build_fails(f, {{1, 1, 1}}, "assigned twice"));
    CHECK(build_fails(f, {{3, 1, 1}}, "out of range"));
    CHECK(build_fails(f, {{0, 1, 1}}, "out of range"));
    CHECK(build_fails(f, {{2, 1, 1}, {2, 1, 1}}, "expected 1 clause entries"));
}

}  // TEST_SUITE

}  // namespace muvc
