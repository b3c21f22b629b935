#include "muvc/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

namespace muvc {

VertexSet make_vertex_set(std::vector<Vertex> vertices) {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    return vertices;
}

bool set_contains(const VertexSet& set, Vertex v) {
    return std::binary_search(set.begin(), set.end(), v);
}

Graph::Graph(Vertex n) : n_(n), adj_(static_cast<std::size_t>(n)) {
    if (n < 0) {
        throw GraphError("vertex count must be non-negative");
    }
}

void Graph::check_vertex(Vertex v) const {
    if (v < 0 || v >= n_) {
        throw GraphError("vertex id " + std::to_string(v) + " out of range [0, " +
                         std::to_string(n_) + ")");
    }
}

void Graph::add_edge(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) {
        throw GraphError("self loop at vertex " + std::to_string(u));
    }
    auto& nu = adj_[static_cast<std::size_t>(u)];
    auto pos = std::lower_bound(nu.begin(), nu.end(), v);
    if (pos != nu.end() && *pos == v) {
        throw GraphError("duplicate edge {" + std::to_string(u) + ", " + std::to_string(v) + "}");
    }
    nu.insert(pos, v);
    auto& nv = adj_[static_cast<std::size_t>(v)];
    nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
    ++m_;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    const auto& nu = adj_[static_cast<std::size_t>(u)];
    return std::binary_search(nu.begin(), nu.end(), v);
}

const std::vector<Vertex>& Graph::neighbors(Vertex v) const {
    check_vertex(v);
    return adj_[static_cast<std::size_t>(v)];
}

int Graph::degree(Vertex v) const {
    check_vertex(v);
    return static_cast<int>(adj_[static_cast<std::size_t>(v)].size());
}

int Graph::max_degree() const {
    int best = 0;
    for (const auto& list : adj_) {
        best = std::max(best, static_cast<int>(list.size()));
    }
    return best;
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(m_);
    for (Vertex u = 0; u < n_; ++u) {
        for (Vertex v : adj_[static_cast<std::size_t>(u)]) {
            if (u < v) {
                out.emplace_back(u, v);
            }
        }
    }
    return out;
}

InducedSubgraph delete_vertices(const Graph& g, const VertexSet& removed) {
    const Vertex n = g.vertex_count();
    for (Vertex v : removed) {
        if (v < 0 || v >= n) {
            throw GraphError("deleted vertex " + std::to_string(v) + " out of range");
        }
    }
    InducedSubgraph result;
    result.to_sub.assign(static_cast<std::size_t>(n), -1);
    Vertex next = 0;
    for (Vertex v = 0; v < n; ++v) {
        if (!set_contains(removed, v)) {
            result.to_sub[static_cast<std::size_t>(v)] = next++;
            result.to_original.push_back(v);
        }
    }
    result.graph = Graph(next);
    for (Vertex v = 0; v < n; ++v) {
        const Vertex sv = result.to_sub[static_cast<std::size_t>(v)];
        if (sv < 0) {
            continue;
        }
        for (Vertex u : g.neighbors(v)) {
            const Vertex su = u < v ? -1 : result.to_sub[static_cast<std::size_t>(u)];
            if (su >= 0) {
                result.graph.add_edge(sv, su);
            }
        }
    }
    return result;
}

bool is_vertex_cover(const Graph& g, const VertexSet& cover) {
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        if (set_contains(cover, u)) {
            continue;
        }
        for (Vertex v : g.neighbors(u)) {
            if (u < v && !set_contains(cover, v)) {
                return false;
            }
        }
    }
    return true;
}

std::vector<VertexSet> connected_components(const Graph& g) {
    const Vertex n = g.vertex_count();
    std::vector<VertexSet> components;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<Vertex> stack;
    for (Vertex start = 0; start < n; ++start) {
        if (seen[static_cast<std::size_t>(start)]) {
            continue;
        }
        VertexSet component;
        stack.push_back(start);
        seen[static_cast<std::size_t>(start)] = 1;
        while (!stack.empty()) {
            const Vertex v = stack.back();
            stack.pop_back();
            component.push_back(v);
            for (Vertex u : g.neighbors(v)) {
                if (!seen[static_cast<std::size_t>(u)]) {
                    seen[static_cast<std::size_t>(u)] = 1;
                    stack.push_back(u);
                }
            }
        }
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
    }
    return components;
}

bool is_forest(const Graph& g) {
    // A graph is a forest iff every component has |V| - 1 edges; count both per component.
    const auto components = connected_components(g);
    std::size_t edge_total = 0;
    for (const auto& component : components) {
        edge_total += component.size() - 1;
    }
    return edge_total == g.edge_count();
}

namespace {

[[noreturn]] void parse_fail(const std::string& source, std::size_t line, const std::string& what) {
    throw ParseError(source + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

Graph parse_gr(std::istream& in, const std::string& source) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    Vertex n = 0;
    std::size_t m = 0;
    std::size_t edges_seen = 0;
    Graph g;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::istringstream tokens(line);
        std::string kind;
        tokens >> kind;
        if (kind.empty()) {
            continue;
        }
        if (kind == "p") {
            if (have_header) {
                parse_fail(source, line_no, "duplicate header");
            }
            long long hn = -1, hm = -1;
            if (!(tokens >> hn >> hm) || hn < 0 || hm < 0) {
                parse_fail(source, line_no, "malformed header, expected 'p <n> <m>'");
            }
            std::string rest;
            if (tokens >> rest) {
                parse_fail(source, line_no, "trailing tokens after header");
            }
            n = static_cast<Vertex>(hn);
            m = static_cast<std::size_t>(hm);
            g = Graph(n);
            have_header = true;
        } else if (kind == "e") {
            if (!have_header) {
                parse_fail(source, line_no, "edge before header");
            }
            long long u = 0, v = 0;
            if (!(tokens >> u >> v)) {
                parse_fail(source, line_no, "malformed edge, expected 'e <u> <v>'");
            }
            if (u < 1 || u > n || v < 1 || v > n) {
                parse_fail(source, line_no, "edge endpoint out of range [1, " + std::to_string(n) + "]");
            }
            if (u == v) {
                parse_fail(source, line_no, "self loop at vertex " + std::to_string(u));
            }
            const Vertex a = static_cast<Vertex>(u - 1);
            const Vertex b = static_cast<Vertex>(v - 1);
            if (g.has_edge(a, b)) {
                parse_fail(source, line_no, "duplicate edge {" + std::to_string(u) + ", " + std::to_string(v) + "}");
            }
            g.add_edge(a, b);
            ++edges_seen;
        } else {
            parse_fail(source, line_no, "unknown line kind '" + kind + "'");
        }
    }
    if (!have_header) {
        parse_fail(source, line_no, "missing 'p <n> <m>' header");
    }
    if (edges_seen != m) {
        parse_fail(source, line_no,
                   "header announced " + std::to_string(m) + " edges but " +
                       std::to_string(edges_seen) + " were given");
    }
    return g;
}

Graph parse_gr_text(const std::string& text, const std::string& source) {
    std::istringstream in(text);
    return parse_gr(in, source);
}

Graph load_gr(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path + ": cannot open file");
    }
    return parse_gr(in, path);
}

std::string format_gr(const Graph& g) {
    std::ostringstream out;
    out << "p " << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& [u, v] : g.edges()) {
        out << "e " << (u + 1) << ' ' << (v + 1) << '\n';
    }
    return out.str();
}

}  // namespace muvc
