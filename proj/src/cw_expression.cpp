#include "muvc/cw_expression.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <utility>

namespace muvc {

namespace {

[[noreturn]] void bad_expr(const std::string& what) {
    throw GraphError("invalid expression: " + what);
}

void check_label(int value, const std::string& where) {
    if (value < 1 || value > kMaxCwLabel) {
        bad_expr(where + " label " + std::to_string(value) + " outside [1, " +
                 std::to_string(kMaxCwLabel) + "]");
    }
}

}  // namespace

int cw_width(const CwExpression& e) {
    int width = 0;
    for (const CwNode& node : e.nodes) {
        if (node.kind == CwKind::Singleton) {
            width = std::max(width, node.label);
        } else if (node.kind != CwKind::Union) {
            width = std::max(width, std::max(node.i, node.j));
        }
    }
    return width;
}

Vertex cw_vertex_count(const CwExpression& e) {
    Vertex count = 0;
    for (const CwNode& node : e.nodes) {
        count += node.kind == CwKind::Singleton ? 1 : 0;
    }
    return count;
}

void validate_cw_expression(const CwExpression& e) {
    if (e.nodes.empty()) {
        bad_expr("no nodes");
    }
    const int count = static_cast<int>(e.nodes.size());
    std::vector<int> used(static_cast<std::size_t>(count), 0);
    std::unordered_set<std::string> names;
    for (int idx = 0; idx < count; ++idx) {
        const CwNode& node = e.nodes[static_cast<std::size_t>(idx)];
        const auto claim_child = [&](int c) {
            if (c < 0 || c >= idx) {
                bad_expr("child link out of order at node " + std::to_string(idx));
            }
            ++used[static_cast<std::size_t>(c)];
        };
        switch (node.kind) {
            case CwKind::Singleton:
                check_label(node.label, "singleton");
                if (node.name.empty()) {
                    bad_expr("singleton without a name");
                }
                if (!names.insert(node.name).second) {
                    bad_expr("duplicate vertex name '" + node.name + "'");
                }
                if (node.child0 >= 0 || node.child1 >= 0) {
                    bad_expr("singleton with children");
                }
                break;
            case CwKind::Union:
                claim_child(node.child0);
                claim_child(node.child1);
                break;
            case CwKind::Connect:
            case CwKind::Relabel:
                check_label(node.i, "operation");
                check_label(node.j, "operation");
                if (node.i == node.j) {
                    bad_expr("operation needs two distinct labels");
                }
                claim_child(node.child0);
                if (node.child1 >= 0) {
                    bad_expr("unary operation with a second child");
                }
                break;
        }
    }
    for (int idx = 0; idx + 1 < count; ++idx) {
        if (used[static_cast<std::size_t>(idx)] != 1) {
            bad_expr("nodes do not form a tree");
        }
    }
    if (used[static_cast<std::size_t>(count - 1)] != 0) {
        bad_expr("root node has a parent");
    }
}

LabeledGraph eval_cw_expression(const CwExpression& e) {
    validate_cw_expression(e);
    const int width = cw_width(e);
    const Vertex n = cw_vertex_count(e);
    // Per live node: one vertex list per label, ids in singleton order.
    std::vector<std::vector<VertexSet>> lists(e.nodes.size());
    std::vector<std::string> created_names;
    std::set<std::pair<Vertex, Vertex>> edges;
    for (std::size_t idx = 0; idx < e.nodes.size(); ++idx) {
        const CwNode& node = e.nodes[idx];
        switch (node.kind) {
            case CwKind::Singleton: {
                lists[idx].assign(static_cast<std::size_t>(width) + 1, {});
                const Vertex id = static_cast<Vertex>(created_names.size());
                lists[idx][static_cast<std::size_t>(node.label)].push_back(id);
                created_names.push_back(node.name);
                break;
            }
            case CwKind::Union: {
                lists[idx] = std::move(lists[static_cast<std::size_t>(node.child0)]);
                auto& other = lists[static_cast<std::size_t>(node.child1)];
                for (std::size_t l = 0; l < lists[idx].size(); ++l) {
                    lists[idx][l].insert(lists[idx][l].end(), other[l].begin(),
                                         other[l].end());
                }
                other.clear();
                break;
            }
            case CwKind::Connect: {
                lists[idx] = std::move(lists[static_cast<std::size_t>(node.child0)]);
                const auto& a = lists[idx][static_cast<std::size_t>(node.i)];
                const auto& b = lists[idx][static_cast<std::size_t>(node.j)];
                for (Vertex u : a) {
                    for (Vertex v : b) {
                        edges.insert(std::minmax(u, v));
                    }
                }
                break;
            }
            case CwKind::Relabel: {
                lists[idx] = std::move(lists[static_cast<std::size_t>(node.child0)]);
                auto& from = lists[idx][static_cast<std::size_t>(node.i)];
                auto& to = lists[idx][static_cast<std::size_t>(node.j)];
                to.insert(to.end(), from.begin(), from.end());
                from.clear();
                break;
            }
        }
    }
    // The decimal naming convention pins vertex ids; otherwise keep the
    // singleton creation order.
    std::vector<Vertex> remap(static_cast<std::size_t>(n));
    bool decimal = true;
    std::vector<char> taken(static_cast<std::size_t>(n), 0);
    for (Vertex id = 0; id < n && decimal; ++id) {
        const std::string& text = created_names[static_cast<std::size_t>(id)];
        long long value = 0;
        decimal = !text.empty() && text.size() <= 9;
        for (char c : text) {
            if (!std::isdigit(static_cast<unsigned char>(c))) {
                decimal = false;
                break;
            }
            value = value * 10 + (c - '0');
        }
        if (decimal && (value < 1 || value > n || taken[static_cast<std::size_t>(value - 1)])) {
            decimal = false;
        }
        if (decimal) {
            taken[static_cast<std::size_t>(value - 1)] = 1;
            remap[static_cast<std::size_t>(id)] = static_cast<Vertex>(value - 1);
        }
    }
    if (!decimal) {
        for (Vertex id = 0; id < n; ++id) {
            remap[static_cast<std::size_t>(id)] = id;
        }
    }
    LabeledGraph out;
    out.graph = Graph(n);
    out.label.assign(static_cast<std::size_t>(n), 0);
    out.name.assign(static_cast<std::size_t>(n), "");
    for (const auto& [u, v] : edges) {
        out.graph.add_edge(remap[static_cast<std::size_t>(u)],
                           remap[static_cast<std::size_t>(v)]);
    }
    const auto& root = lists.back();
    for (std::size_t l = 1; l < root.size(); ++l) {
        for (Vertex id : root[l]) {
            out.label[static_cast<std::size_t>(remap[static_cast<std::size_t>(id)])] =
                static_cast<int>(l);
        }
    }
    for (Vertex id = 0; id < n; ++id) {
        out.name[static_cast<std::size_t>(remap[static_cast<std::size_t>(id)])] =
            created_names[static_cast<std::size_t>(id)];
    }
    return out;
}

namespace {

struct CwToken {
    std::string text;
    std::size_t line = 0;
};

[[noreturn]] void cw_fail(const std::string& source, std::size_t line,
                          const std::string& what) {
    throw ParseError(source + ":" + std::to_string(line) + ": " + what);
}

std::vector<CwToken> cw_tokenize(std::istream& in) {
    std::vector<CwToken> tokens;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        for (std::size_t pos = 0; pos < line.size();) {
            const char c = line[pos];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos;
            } else if (c == '#') {
                break;
            } else if (c == '(' || c == ')') {
                tokens.push_back({std::string(1, c), line_no});
                ++pos;
            } else {
                std::size_t end = pos;
                while (end < line.size() && line[end] != '(' && line[end] != ')' &&
                       line[end] != '#' &&
                       !std::isspace(static_cast<unsigned char>(line[end]))) {
                    ++end;
                }
                tokens.push_back({line.substr(pos, end - pos), line_no});
                pos = end;
            }
        }
    }
    return tokens;
}

int cw_parse_label(const std::string& source, const CwToken& token,
                   const std::string& op) {
    int value = 0;
    for (char c : token.text) {
        if (!std::isdigit(static_cast<unsigned char>(c)) || token.text.size() > 4) {
            cw_fail(source, token.line,
                    op + " needs a numeric label, got '" + token.text + "'");
        }
        value = value * 10 + (c - '0');
    }
    if (token.text.empty() || value < 1 || value > kMaxCwLabel) {
        cw_fail(source, token.line, op + " label out of range [1, " +
                                        std::to_string(kMaxCwLabel) + "]");
    }
    return value;
}

}  // namespace

CwExpression parse_cw_expression(std::istream& in, const std::string& source) {
    const std::vector<CwToken> tokens = cw_tokenize(in);
    CwExpression e;
    struct Frame {
        std::string op;
        std::size_t line = 0;
        std::vector<CwToken> atoms;
        std::vector<int> children;
    };
    std::vector<Frame> stack;
    std::unordered_set<std::string> names;
    int root = -1;
    bool expecting_op = false;
    for (const CwToken& token : tokens) {
        if (root >= 0) {
            cw_fail(source, token.line, "trailing tokens after the expression");
        }
        if (token.text == "(") {
            if (expecting_op) {
                cw_fail(source, token.line, "missing constructor name");
            }
            stack.push_back(Frame{"", token.line, {}, {}});
            expecting_op = true;
            continue;
        }
        if (expecting_op) {
            if (token.text != "v" && token.text != "union" && token.text != "eta" &&
                token.text != "rho") {
                cw_fail(source, token.line,
                        "unknown constructor '" + token.text + "'");
            }
            stack.back().op = token.text;
            expecting_op = false;
            continue;
        }
        if (token.text == ")") {
            if (stack.empty()) {
                cw_fail(source, token.line, "unbalanced ')'");
            }
            Frame frame = std::move(stack.back());
            stack.pop_back();
            CwNode node;
            if (frame.op == "v") {
                if (frame.atoms.size() != 2 || !frame.children.empty()) {
                    cw_fail(source, frame.line, "v expects a label and a name");
                }
                node.kind = CwKind::Singleton;
                node.label = cw_parse_label(source, frame.atoms[0], "v");
                node.name = frame.atoms[1].text;
                if (!names.insert(node.name).second) {
                    cw_fail(source, frame.atoms[1].line,
                            "duplicate vertex name '" + node.name + "'");
                }
            } else if (frame.op == "union") {
                if (!frame.atoms.empty() || frame.children.size() != 2) {
                    cw_fail(source, frame.line, "union expects two subexpressions");
                }
                node.kind = CwKind::Union;
                node.child0 = frame.children[0];
                node.child1 = frame.children[1];
            } else {
                if (frame.atoms.size() != 2 || frame.children.size() != 1) {
                    cw_fail(source, frame.line,
                            frame.op + " expects two labels and a subexpression");
                }
                node.kind = frame.op == "eta" ? CwKind::Connect : CwKind::Relabel;
                node.i = cw_parse_label(source, frame.atoms[0], frame.op);
                node.j = cw_parse_label(source, frame.atoms[1], frame.op);
                if (node.i == node.j) {
                    cw_fail(source, frame.line,
                            frame.op + " needs two distinct labels");
                }
                node.child0 = frame.children[0];
            }
            e.nodes.push_back(std::move(node));
            const int idx = static_cast<int>(e.nodes.size()) - 1;
            if (stack.empty()) {
                root = idx;
            } else {
                stack.back().children.push_back(idx);
            }
            continue;
        }
        // A bare atom: an argument of the innermost frame.
        if (stack.empty()) {
            cw_fail(source, token.line, "expected '(' to open an expression");
        }
        if (!stack.back().children.empty()) {
            cw_fail(source, token.line, "misplaced token '" + token.text + "'");
        }
        stack.back().atoms.push_back(token);
    }
    if (!stack.empty()) {
        cw_fail(source, stack.back().line, "unexpected end of input");
    }
    if (root < 0) {
        cw_fail(source, 1, "missing expression");
    }
    validate_cw_expression(e);
    return e;
}

CwExpression parse_cw_expression_text(const std::string& text,
                                      const std::string& source) {
    std::istringstream in(text);
    return parse_cw_expression(in, source);
}

CwExpression load_cw_expression(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    return parse_cw_expression(in, path);
}

std::string format_cw_expression(const CwExpression& e) {
    validate_cw_expression(e);
    std::string out;
    // Emit with an explicit stack: positive entries open a node, negative
    // entries emit the matching ')'.
    std::vector<int> work;
    work.push_back(static_cast<int>(e.nodes.size()) - 1);
    while (!work.empty()) {
        const int item = work.back();
        work.pop_back();
        if (item < 0) {
            out.push_back(')');
            continue;
        }
        const CwNode& node = e.nodes[static_cast<std::size_t>(item)];
        if (!out.empty() && out.back() != '(') {
            out.push_back(' ');
        }
        switch (node.kind) {
            case CwKind::Singleton:
                out += "(v " + std::to_string(node.label) + ' ' + node.name + ')';
                break;
            case CwKind::Union:
                out += "(union";
                work.push_back(-1);
                work.push_back(node.child1);
                work.push_back(node.child0);
                break;
            case CwKind::Connect:
            case CwKind::Relabel:
                out += node.kind == CwKind::Connect ? "(eta " : "(rho ";
                out += std::to_string(node.i) + ' ' + std::to_string(node.j);
                work.push_back(-1);
                work.push_back(node.child0);
                break;
        }
    }
    out.push_back('\n');
    return out;
}

namespace {

std::string decimal_name(Vertex v) {
    return std::to_string(v + 1);
}

int add_cw_node(CwExpression& e, CwNode node) {
    e.nodes.push_back(std::move(node));
    return static_cast<int>(e.nodes.size()) - 1;
}

int add_singleton(CwExpression& e, int label, Vertex v) {
    CwNode node;
    node.kind = CwKind::Singleton;
    node.label = label;
    node.name = decimal_name(v);
    return add_cw_node(e, std::move(node));
}

int add_union(CwExpression& e, int a, int b) {
    CwNode node;
    node.kind = CwKind::Union;
    node.child0 = a;
    node.child1 = b;
    return add_cw_node(e, std::move(node));
}

int add_unary(CwExpression& e, CwKind kind, int i, int j, int child) {
    CwNode node;
    node.kind = kind;
    node.i = i;
    node.j = j;
    node.child0 = child;
    return add_cw_node(e, std::move(node));
}

}  // namespace

CwExpression cw_path_expression(Vertex n) {
    if (n < 1) {
        throw GraphError("path expression needs at least one vertex");
    }
    CwExpression e;
    if (n == 1) {
        add_singleton(e, 1, 0);
        return e;
    }
    if (n == 2) {
        const int a = add_singleton(e, 1, 0);
        const int b = add_singleton(e, 2, 1);
        add_unary(e, CwKind::Connect, 1, 2, add_union(e, a, b));
        return e;
    }
    // Label 2 marks the growing end, label 1 the settled interior, label 3
    // the vertex being attached.
    int top = add_singleton(e, 2, 0);
    for (Vertex v = 1; v < n; ++v) {
        const int fresh = add_singleton(e, 3, v);
        top = add_unary(e, CwKind::Connect, 2, 3, add_union(e, top, fresh));
        top = add_unary(e, CwKind::Relabel, 2, 1, top);
        top = add_unary(e, CwKind::Relabel, 3, 2, top);
    }
    return e;
}

CwExpression cw_tree_expression(const Graph& tree) {
    if (tree.vertex_count() < 1) {
        throw GraphError("tree expression needs at least one vertex");
    }
    if (!is_forest(tree) || connected_components(tree).size() != 1) {
        throw GraphError("tree expression needs a connected forest");
    }
    const Vertex n = tree.vertex_count();
    std::vector<Vertex> order;
    std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
    order.push_back(0);
    parent[0] = 0;
    for (std::size_t head = 0; head < order.size(); ++head) {
        const Vertex v = order[head];
        for (Vertex u : tree.neighbors(v)) {
            if (parent[static_cast<std::size_t>(u)] < 0) {
                parent[static_cast<std::size_t>(u)] = v;
                order.push_back(u);
            }
        }
    }
    // Each finished subtree carries its root with label 2 and everything
    // else with label 1; attaching moves the child root through label 3.
    CwExpression e;
    std::vector<int> top_of(static_cast<std::size_t>(n), -1);
    for (std::size_t i = order.size(); i-- > 0;) {
        const Vertex v = order[i];
        int top = add_singleton(e, 2, v);
        for (Vertex u : tree.neighbors(v)) {
            if (u == parent[static_cast<std::size_t>(v)]) {
                continue;
            }
            const int child = add_unary(e, CwKind::Relabel, 2, 3,
                                        top_of[static_cast<std::size_t>(u)]);
            top = add_unary(e, CwKind::Connect, 2, 3, add_union(e, top, child));
            top = add_unary(e, CwKind::Relabel, 3, 1, top);
        }
        top_of[static_cast<std::size_t>(v)] = top;
    }
    return e;
}

void validate_cotree(const Cotree& ct) {
    if (ct.nodes.empty()) {
        throw GraphError("invalid cotree: no nodes");
    }
    const int count = static_cast<int>(ct.nodes.size());
    std::vector<int> used(static_cast<std::size_t>(count), 0);
    std::vector<Vertex> leaves;
    for (int idx = 0; idx < count; ++idx) {
        const CotreeNode& node = ct.nodes[static_cast<std::size_t>(idx)];
        if (node.kind == CotreeKind::Leaf) {
            if (node.child0 >= 0 || node.child1 >= 0) {
                throw GraphError("invalid cotree: leaf with children");
            }
            leaves.push_back(node.vertex);
        } else {
            for (int c : {node.child0, node.child1}) {
                if (c < 0 || c >= idx) {
                    throw GraphError("invalid cotree: child link out of order");
                }
                ++used[static_cast<std::size_t>(c)];
            }
        }
    }
    for (int idx = 0; idx + 1 < count; ++idx) {
        if (used[static_cast<std::size_t>(idx)] != 1) {
            throw GraphError("invalid cotree: nodes do not form a tree");
        }
    }
    if (used[static_cast<std::size_t>(count - 1)] != 0) {
        throw GraphError("invalid cotree: root has a parent");
    }
    std::sort(leaves.begin(), leaves.end());
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        if (leaves[i] != static_cast<Vertex>(i)) {
            throw GraphError("invalid cotree: leaf ids must be exactly 0..n-1");
        }
    }
}

Graph eval_cotree(const Cotree& ct) {
    validate_cotree(ct);
    std::vector<VertexSet> members(ct.nodes.size());
    Vertex n = 0;
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (std::size_t idx = 0; idx < ct.nodes.size(); ++idx) {
        const CotreeNode& node = ct.nodes[idx];
        if (node.kind == CotreeKind::Leaf) {
            members[idx] = {node.vertex};
            ++n;
            continue;
        }
        auto& a = members[static_cast<std::size_t>(node.child0)];
        auto& b = members[static_cast<std::size_t>(node.child1)];
        if (node.kind == CotreeKind::Join) {
            for (Vertex u : a) {
                for (Vertex v : b) {
                    edges.push_back(std::minmax(u, v));
                }
            }
        }
        members[idx] = std::move(a);
        members[idx].insert(members[idx].end(), b.begin(), b.end());
        b.clear();
    }
    Graph g(n);
    for (const auto& [u, v] : edges) {
        g.add_edge(u, v);
    }
    return g;
}

CwExpression cw_cograph_expression(const Cotree& ct) {
    validate_cotree(ct);
    CwExpression e;
    std::vector<int> top_of(ct.nodes.size(), -1);
    for (std::size_t idx = 0; idx < ct.nodes.size(); ++idx) {
        const CotreeNode& node = ct.nodes[idx];
        switch (node.kind) {
            case CotreeKind::Leaf:
                top_of[idx] = add_singleton(e, 1, node.vertex);
                break;
            case CotreeKind::Union:
                top_of[idx] =
                    add_union(e, top_of[static_cast<std::size_t>(node.child0)],
                              top_of[static_cast<std::size_t>(node.child1)]);
                break;
            case CotreeKind::Join: {
                const int lifted =
                    add_unary(e, CwKind::Relabel, 1, 2,
                              top_of[static_cast<std::size_t>(node.child1)]);
                const int joined = add_union(
                    e, top_of[static_cast<std::size_t>(node.child0)], lifted);
                const int wired = add_unary(e, CwKind::Connect, 1, 2, joined);
                top_of[idx] = add_unary(e, CwKind::Relabel, 2, 1, wired);
                break;
            }
        }
    }
    return e;
}

}  // namespace muvc
