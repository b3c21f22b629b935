#pragma once

// Tree decompositions: PACE-style parsing and formatting, structural
// validation, synthesis for forests, and conversion to the four-operation
// normal form the width-parameterized solver consumes.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "muvc/graph.hpp"

namespace muvc {

struct TreeDecomposition {
    Vertex n = 0;  // vertex count of the decomposed graph
    std::vector<VertexSet> bags;
    // Edges of the bag tree, 0-based bag indices.
    std::vector<std::pair<int, int>> edges;
};

int decomposition_width(const TreeDecomposition& td);

// Throws GraphError with the violated condition: bag contents in range, the
// bag graph being a tree, every vertex and edge appearing in some bag, and
// each vertex's bags forming a connected subtree.
void validate_decomposition(const Graph& g, const TreeDecomposition& td);

// Width-1 decomposition for a forest: one bag per edge plus singleton bags
// for isolated vertices, chained into a single tree. Throws GraphError on
// graphs with cycles.
TreeDecomposition edge_bag_decomposition(const Graph& g);

TreeDecomposition parse_td(std::istream& in, const std::string& source = "<td>");
TreeDecomposition parse_td_text(const std::string& text,
                                const std::string& source = "<td>");
TreeDecomposition load_td(const std::string& path);
std::string format_td(const TreeDecomposition& td);

enum class NiceKind { Leaf, Introduce, Forget, Join };

struct NiceNode {
    NiceKind kind = NiceKind::Leaf;
    Vertex vertex = -1;  // introduced or forgotten vertex
    int child0 = -1;
    int child1 = -1;
    VertexSet bag;
};

// Children always precede parents in `nodes`; the last node is the root and
// has an empty bag, so a bottom-up sweep ends with the whole graph settled.
struct NiceDecomposition {
    Vertex n = 0;
    std::vector<NiceNode> nodes;
};

NiceDecomposition make_nice(const Graph& g, const TreeDecomposition& td);

// Checks the bookkeeping the solver relies on: bags evolve by exactly one
// vertex per unary node, each vertex is forgotten exactly once, join bags
// coincide, the root bag is empty, and summing the edges that become
// permanent at each forget accounts for every edge of g exactly once.
void validate_nice(const Graph& g, const NiceDecomposition& nd);

}  // namespace muvc
