#pragma once

// Clique-width expressions: a small AST over four constructors (labeled
// singleton, disjoint union, connect-two-labels, relabel), an evaluator
// producing the described labeled graph, parser and printer for the
// parenthesized prefix format, and width-bounded builders for paths, trees,
// and cographs.

#include <iosfwd>
#include <string>
#include <vector>

#include "muvc/graph.hpp"

namespace muvc {

// Hard cap on label indices; table sizes grow with 2^width.
inline constexpr int kMaxCwLabel = 12;

enum class CwKind {
    Singleton,  // one vertex carrying a label
    Union,      // disjoint union of two subexpressions
    Connect,    // add every edge between label classes i and j
    Relabel,    // move every vertex with label i to label j
};

struct CwNode {
    CwKind kind = CwKind::Singleton;
    int label = 0;     // Singleton only
    int i = 0;         // Connect/Relabel
    int j = 0;         // Connect/Relabel
    std::string name;  // Singleton only; globally unique
    int child0 = -1;
    int child1 = -1;   // Union only
};

// Children always precede parents in `nodes`; the last node is the root.
struct CwExpression {
    std::vector<CwNode> nodes;
};

// Largest label index mentioned anywhere in the expression.
int cw_width(const CwExpression& e);

// Number of singletons, which is the vertex count of the evaluated graph.
Vertex cw_vertex_count(const CwExpression& e);

// Structural checks: tree-shaped with children preceding parents, label
// indices in [1, 12], distinct labels on connect/relabel, unique vertex
// names. Throws GraphError.
void validate_cw_expression(const CwExpression& e);

struct LabeledGraph {
    Graph graph;
    std::vector<int> label;        // label per vertex after the root op
    std::vector<std::string> name; // vertex name per vertex
};

// Materializes the expression. Vertex ids: when the names are exactly the
// decimal strings 1..n they decide the ids (name k becomes vertex k - 1);
// otherwise vertices are numbered in order of singleton appearance. The
// builders below follow the decimal convention, so their output evaluates
// back to the input graph verbatim.
LabeledGraph eval_cw_expression(const CwExpression& e);

CwExpression parse_cw_expression(std::istream& in,
                                 const std::string& source = "<cw>");
CwExpression parse_cw_expression_text(const std::string& text,
                                      const std::string& source = "<cw>");
CwExpression load_cw_expression(const std::string& path);
std::string format_cw_expression(const CwExpression& e);

// Path on vertices 1..n in order; width 1 (n = 1), 2 (n = 2), else 3.
CwExpression cw_path_expression(Vertex n);

// Any connected forest; width at most 3. Throws GraphError otherwise.
CwExpression cw_tree_expression(const Graph& tree);

enum class CotreeKind { Leaf, Union, Join };

struct CotreeNode {
    CotreeKind kind = CotreeKind::Leaf;
    Vertex vertex = -1;  // Leaf only; 0-based, the ids must form 0..n-1
    int child0 = -1;
    int child1 = -1;
};

// Children precede parents; the last node is the root.
struct Cotree {
    std::vector<CotreeNode> nodes;
};

void validate_cotree(const Cotree& ct);

// The cograph a cotree describes: leaves are vertices, a union node keeps
// the two sides apart, a join node adds all edges between them.
Graph eval_cotree(const Cotree& ct);

// Width-2 expression evaluating to eval_cotree(ct).
CwExpression cw_cograph_expression(const Cotree& ct);

}  // namespace muvc
