#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace muvc {

using Vertex = std::int32_t;

// Sorted, duplicate-free list of vertex ids. Helpers below keep the invariant.
using VertexSet = std::vector<Vertex>;

// Sorts and deduplicates in place, then returns the set.
VertexSet make_vertex_set(std::vector<Vertex> vertices);
bool set_contains(const VertexSet& set, Vertex v);

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised by the instance parsers; the message carries source name and line number.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
// In-memory ids are 0-based; the text format and all reports are 1-based.
class Graph {
public:
    Graph() = default;
    explicit Graph(Vertex n);

    // Rejects out-of-range endpoints, self loops and duplicate edges.
    void add_edge(Vertex u, Vertex v);

    Vertex vertex_count() const { return n_; }
    std::size_t edge_count() const { return m_; }
    bool has_edge(Vertex u, Vertex v) const;
    const std::vector<Vertex>& neighbors(Vertex v) const;
    int degree(Vertex v) const;
    int max_degree() const;

    // All edges as (u, v) pairs with u < v, ordered by u then v.
    std::vector<std::pair<Vertex, Vertex>> edges() const;

private:
    void check_vertex(Vertex v) const;

    Vertex n_ = 0;
    std::size_t m_ = 0;
    std::vector<std::vector<Vertex>> adj_;
};

// Result of deleting a vertex set: the induced subgraph plus both index maps.
struct InducedSubgraph {
    Graph graph;
    std::vector<Vertex> to_original;  // subgraph id -> original id
    std::vector<Vertex> to_sub;       // original id -> subgraph id, -1 if deleted
};

InducedSubgraph delete_vertices(const Graph& g, const VertexSet& removed);

bool is_vertex_cover(const Graph& g, const VertexSet& cover);

// Connected components as sorted vertex lists, ordered by smallest member.
std::vector<VertexSet> connected_components(const Graph& g);
bool is_forest(const Graph& g);

// Text format: optional '#' comment lines, one "p <n> <m>" header, then exactly
// m lines "e <u> <v>" with 1-based endpoints.
Graph parse_gr(std::istream& in, const std::string& source = "<gr>");
Graph parse_gr_text(const std::string& text, const std::string& source = "<gr>");
Graph load_gr(const std::string& path);
std::string format_gr(const Graph& g);

}  // namespace muvc
