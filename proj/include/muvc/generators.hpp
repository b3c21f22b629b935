#pragma once

// Instance generators: a pendant-path family of trees whose modulator size
// stays at two while the pinning number grows, gadget graphs reduced from
// typed one-in-three formulas, and seeded random corpora for testing.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "muvc/cw_expression.hpp"
#include "muvc/graph.hpp"

namespace muvc {

// Member k of the separation family (k >= 3). Member 3 is the nine-vertex
// tree with hub 0 carrying three pendant 2-paths and two pendant leaves;
// each later member hangs one more pendant 2-path on the hub, so member k
// has 9 + 2(k-3) vertices and hub degree 5 + (k-3).
Graph gen_gk(int k);

// Deterministic 64-bit generator: the state advances by 0x9E3779B97F4A7C15
// per draw and the output mix xors and multiplies by 0xBF58476D1CE4E5B9 and
// 0x94D049BB133111EB. Documented in the README so corpora can be reproduced
// outside this codebase.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();

    // Uniform-enough value in [0, bound) taken as next() mod bound.
    std::uint64_t next_below(std::uint64_t bound);

    // Uniform double in [0, 1) from the top 53 bits of next().
    double next_unit();

private:
    std::uint64_t state_;
};

// Uniform random tree on n vertices decoded from a random Pruefer sequence.
Graph gen_random_tree(Vertex n, std::uint64_t seed);

// Each pair becomes an edge independently with probability p.
Graph gen_random_graph(Vertex n, double p, std::uint64_t seed);

// Random cotree with leaves 0..n-1 built by repeatedly merging two random
// roots under a coin-flipped union or join node.
Cotree gen_random_cotree(Vertex n, std::uint64_t seed);

// A positive or negative occurrence of variable `index` (1-based within its
// type). Type-x variables are the ones an outer assignment ranges over;
// type-y variables must end up with exactly one completing assignment.
struct Literal {
    bool type_x = true;
    int index = 0;
    bool positive = true;
};

// Three-literal clauses over the two variable types. The decision problem
// asks for an assignment of the type-x variables under which exactly one
// assignment of the type-y variables makes every clause contain exactly one
// true literal.
struct TypedFormula {
    int x_count = 0;
    int y_count = 0;
    std::vector<std::array<Literal, 3>> clauses;
};

// Rejects out-of-range variable indices and variables that never occur.
void validate_formula(const TypedFormula& f);

// Text format: an "x <count>" line, a "y <count>" line, then one line per
// clause holding three signed tokens such as "x1 -y2 y3". '#' starts a
// comment; blank lines are skipped.
TypedFormula parse_formula(std::istream& in, const std::string& source = "<formula>");
TypedFormula parse_formula_text(const std::string& text,
                                const std::string& source = "<formula>");
TypedFormula load_formula(const std::string& path);
std::string format_formula(const TypedFormula& f);

// Exhaustive decision of the formula problem above; guarded to
// x_count + y_count <= 24 variables.
bool uq_one_in_three_sat(const TypedFormula& f);

// Gadget graph produced from a formula, with a per-vertex role tag sidecar.
// Tags: clause t yields "c<t>:l1".."c<t>:l3" (triangle corners, one per
// literal slot), "c<t>:w" (apex adjacent to all corners) and "c<t>:z"
// (pendant on the apex). A variable gadget is a cycle of 4·occurrences
// colored vertices "x<i>:v<a>:<red|blue>:<inner|outer>" (odd positions red,
// even blue; positions 2 and 3 of each quadruple are the inner pair), with
// a cover vertex "...:w<a>" straddling every cycle edge and a pendant
// "...:z<a>" on each cover vertex. Type-x gadgets route the cycle's closing
// arc through two extra colored vertices "x<i>:u1" and "x<i>:u4" (cover
// vertices "x<i>:w<p>", "x<i>:wu", "x<i>:w0" and matching z tags) and hang
// the pendant paths u1-u2-u3 and u4-u5-u6 off them.
struct GadgetGraph {
    Graph graph;
    std::vector<std::string> role;

    // Per clause: the three triangle corners, the apex, and its pendant.
    std::vector<std::array<Vertex, 3>> clause_l;
    std::vector<Vertex> clause_w;
    std::vector<Vertex> clause_z;

    // Per variable: the colored cycle vertices, position a at index a-1.
    std::vector<std::vector<Vertex>> x_colored;
    std::vector<std::vector<Vertex>> y_colored;

    // Per type-x variable: u1..u6 at indices 0..5.
    std::vector<std::array<Vertex, 6>> x_u;
};

// Per clause, per literal slot: which occurrence of the slot's variable the
// slot consumes (1-based). The assignment must be a bijection onto
// 1..occurrences for every variable. An empty order means clause order.
using OccurrenceOrder = std::vector<std::array<int, 3>>;

// Builds the gadget graph: one clause gadget per clause and one variable
// gadget per variable, a corner-to-inner-vertex edge per literal (blue
// inner vertex of the consumed quadruple for a positive literal, red for a
// negative one), and three chords per clause tying consecutive slots'
// quadruple neighborhoods together.
GadgetGraph gen_hardness_instance(const TypedFormula& f,
                                  const OccurrenceOrder& order = {});

// Sidecar text: one "<vertex> <tag>" line per vertex, 1-based ids.
std::string format_roles(const GadgetGraph& g);

}  // namespace muvc
