#include "muvc/tree_decomposition.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace muvc {

namespace {

[[noreturn]] void td_fail(const std::string& source, std::size_t line,
                          const std::string& what) {
    throw ParseError(source + ":" + std::to_string(line) + ": " + what);
}

[[noreturn]] void invalid(const std::string& what) {
    throw GraphError("invalid tree decomposition: " + what);
}

}  // namespace

int decomposition_width(const TreeDecomposition& td) {
    std::size_t largest = 0;
    for (const VertexSet& bag : td.bags) {
        largest = std::max(largest, bag.size());
    }
    return static_cast<int>(largest) - 1;
}

void validate_decomposition(const Graph& g, const TreeDecomposition& td) {
    if (td.n != g.vertex_count()) {
        invalid("decomposition announces " + std::to_string(td.n) +
                " vertices but the graph has " + std::to_string(g.vertex_count()));
    }
    const int b = static_cast<int>(td.bags.size());
    for (const VertexSet& bag : td.bags) {
        for (std::size_t i = 0; i < bag.size(); ++i) {
            if (bag[i] < 0 || bag[i] >= td.n) {
                invalid("bag vertex " + std::to_string(bag[i] + 1) + " out of range");
            }
            if (i > 0 && bag[i] <= bag[i - 1]) {
                invalid("bag contents must be strictly increasing");
            }
        }
    }
    if (b == 0) {
        if (td.n > 0) {
            invalid("no bags but the graph is nonempty");
        }
        if (!td.edges.empty()) {
            invalid("bag edges without bags");
        }
        return;
    }
    if (td.edges.size() != static_cast<std::size_t>(b - 1)) {
        invalid("bag tree needs " + std::to_string(b - 1) + " edges, found " +
                std::to_string(td.edges.size()));
    }
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(b));
    for (const auto& [x, y] : td.edges) {
        if (x < 0 || x >= b || y < 0 || y >= b) {
            invalid("bag edge endpoint out of range");
        }
        if (x == y) {
            invalid("bag edge is a self loop");
        }
        adj[static_cast<std::size_t>(x)].push_back(y);
        adj[static_cast<std::size_t>(y)].push_back(x);
    }
    // With b - 1 edges, connectivity makes the bag graph a tree.
    std::vector<int> parent(static_cast<std::size_t>(b), -2);
    std::vector<int> order;
    order.push_back(0);
    parent[0] = -1;
    for (std::size_t head = 0; head < order.size(); ++head) {
        const int x = order[head];
        for (int y : adj[static_cast<std::size_t>(x)]) {
            if (parent[static_cast<std::size_t>(y)] == -2) {
                parent[static_cast<std::size_t>(y)] = x;
                order.push_back(y);
            }
        }
    }
    if (order.size() != static_cast<std::size_t>(b)) {
        invalid("bag graph is not connected");
    }
    std::vector<char> in_bag(static_cast<std::size_t>(td.n), 0);
    std::vector<int> tops(static_cast<std::size_t>(td.n), 0);
    for (int x = 0; x < b; ++x) {
        for (Vertex v : td.bags[static_cast<std::size_t>(x)]) {
            in_bag[static_cast<std::size_t>(v)] = 1;
            const int p = parent[static_cast<std::size_t>(x)];
            if (p == -1 || !set_contains(td.bags[static_cast<std::size_t>(p)], v)) {
                ++tops[static_cast<std::size_t>(v)];
            }
        }
    }
    for (Vertex v = 0; v < td.n; ++v) {
        if (!in_bag[static_cast<std::size_t>(v)]) {
            invalid("vertex " + std::to_string(v + 1) + " appears in no bag");
        }
        if (tops[static_cast<std::size_t>(v)] != 1) {
            invalid("bags holding vertex " + std::to_string(v + 1) +
                    " do not form a connected subtree");
        }
    }
    for (const auto& [u, v] : g.edges()) {
        bool housed = false;
        for (const VertexSet& bag : td.bags) {
            if (set_contains(bag, u) && set_contains(bag, v)) {
                housed = true;
                break;
            }
        }
        if (!housed) {
            invalid("edge {" + std::to_string(u + 1) + ", " + std::to_string(v + 1) +
                    "} appears in no bag");
        }
    }
}

TreeDecomposition edge_bag_decomposition(const Graph& g) {
    if (!is_forest(g)) {
        throw GraphError("edge bag synthesis needs a forest");
    }
    TreeDecomposition td;
    td.n = g.vertex_count();
    int previous_anchor = -1;
    std::vector<Vertex> parent(static_cast<std::size_t>(td.n), -2);
    // anchor[v]: the bag of the edge that attached v, reused to hang the
    // bags of v's children.
    std::vector<int> anchor(static_cast<std::size_t>(td.n), -1);
    for (const VertexSet& comp : connected_components(g)) {
        const Vertex root = comp.front();
        int comp_anchor = -1;
        if (comp.size() == 1) {
            td.bags.push_back({root});
            comp_anchor = static_cast<int>(td.bags.size()) - 1;
        } else {
            std::vector<Vertex> queue{root};
            parent[static_cast<std::size_t>(root)] = -1;
            for (std::size_t head = 0; head < queue.size(); ++head) {
                const Vertex v = queue[head];
                for (Vertex c : g.neighbors(v)) {
                    if (c == parent[static_cast<std::size_t>(v)]) {
                        continue;
                    }
                    parent[static_cast<std::size_t>(c)] = v;
                    VertexSet bag{v, c};
                    std::sort(bag.begin(), bag.end());
                    td.bags.push_back(bag);
                    const int bag_index = static_cast<int>(td.bags.size()) - 1;
                    anchor[static_cast<std::size_t>(c)] = bag_index;
                    const int hook = anchor[static_cast<std::size_t>(v)];
                    if (hook >= 0) {
                        td.edges.emplace_back(hook, bag_index);
                    } else if (comp_anchor >= 0) {
                        td.edges.emplace_back(comp_anchor, bag_index);
                    }
                    if (comp_anchor < 0) {
                        comp_anchor = bag_index;
                    }
                    queue.push_back(c);
                }
            }
        }
        if (previous_anchor >= 0) {
            td.edges.emplace_back(previous_anchor, comp_anchor);
        }
        previous_anchor = comp_anchor;
    }
    return td;
}

TreeDecomposition parse_td(std::istream& in, const std::string& source) {
    TreeDecomposition td;
    std::string line;
    std::size_t line_no = 0;
    bool seen_header = false;
    int announced_bags = 0;
    std::vector<char> defined;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::string kind;
        if (!(fields >> kind) || kind[0] == '#' || kind == "c") {
            continue;
        }
        if (kind == "s") {
            if (seen_header) {
                td_fail(source, line_no, "duplicate header");
            }
            std::string tag;
            int width_plus_one = 0;
            if (!(fields >> tag >> announced_bags >> width_plus_one >> td.n) ||
                tag != "td" || announced_bags < 0 || td.n < 0) {
                td_fail(source, line_no, "malformed header, expected 's td <bags> <width+1> <n>'");
            }
            std::string extra;
            if (fields >> extra) {
                td_fail(source, line_no, "trailing tokens after header");
            }
            seen_header = true;
            td.bags.assign(static_cast<std::size_t>(announced_bags), {});
            defined.assign(static_cast<std::size_t>(announced_bags), 0);
        } else if (kind == "b") {
            if (!seen_header) {
                td_fail(source, line_no, "bag before header");
            }
            int id = 0;
            if (!(fields >> id) || id < 1 || id > announced_bags) {
                td_fail(source, line_no, "bag id out of range [1, " +
                                             std::to_string(announced_bags) + "]");
            }
            if (defined[static_cast<std::size_t>(id - 1)]) {
                td_fail(source, line_no, "duplicate bag " + std::to_string(id));
            }
            defined[static_cast<std::size_t>(id - 1)] = 1;
            VertexSet bag;
            Vertex v = 0;
            while (fields >> v) {
                if (v < 1 || v > td.n) {
                    td_fail(source, line_no, "bag vertex out of range [1, " +
                                                 std::to_string(td.n) + "]");
                }
                bag.push_back(v - 1);
            }
            if (!fields.eof()) {
                td_fail(source, line_no, "malformed bag line");
            }
            std::sort(bag.begin(), bag.end());
            if (std::adjacent_find(bag.begin(), bag.end()) != bag.end()) {
                td_fail(source, line_no, "repeated vertex in bag");
            }
            td.bags[static_cast<std::size_t>(id - 1)] = bag;
        } else {
            if (!seen_header) {
                td_fail(source, line_no, "bag edge before header");
            }
            int x = 0;
            int y = 0;
            std::istringstream pair_fields(line);
            if (!(pair_fields >> x >> y)) {
                td_fail(source, line_no, "malformed line, expected 'b ...' or '<bag> <bag>'");
            }
            std::string extra;
            if (pair_fields >> extra) {
                td_fail(source, line_no, "trailing tokens after bag edge");
            }
            if (x < 1 || x > announced_bags || y < 1 || y > announced_bags) {
                td_fail(source, line_no, "bag edge endpoint out of range");
            }
            td.edges.emplace_back(x - 1, y - 1);
        }
    }
    if (!seen_header) {
        td_fail(source, line_no, "missing 's td <bags> <width+1> <n>' header");
    }
    return td;
}

TreeDecomposition parse_td_text(const std::string& text, const std::string& source) {
    std::istringstream in(text);
    return parse_td(in, source);
}

TreeDecomposition load_td(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    return parse_td(in, path);
}

std::string format_td(const TreeDecomposition& td) {
    std::ostringstream out;
    out << "s td " << td.bags.size() << ' ' << decomposition_width(td) + 1 << ' '
        << td.n << '\n';
    for (std::size_t i = 0; i < td.bags.size(); ++i) {
        out << "b " << i + 1;
        for (Vertex v : td.bags[i]) {
            out << ' ' << v + 1;
        }
        out << '\n';
    }
    for (const auto& [x, y] : td.edges) {
        out << x + 1 << ' ' << y + 1 << '\n';
    }
    return out.str();
}

NiceDecomposition make_nice(const Graph& g, const TreeDecomposition& td) {
    validate_decomposition(g, td);
    NiceDecomposition nd;
    nd.n = td.n;
    const int b = static_cast<int>(td.bags.size());
    if (b == 0) {
        nd.nodes.push_back(NiceNode{});
        return nd;
    }
    std::vector<std::vector<int>> children(static_cast<std::size_t>(b));
    std::vector<int> order;
    {
        std::vector<char> seen(static_cast<std::size_t>(b), 0);
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(b));
        for (const auto& [x, y] : td.edges) {
            adj[static_cast<std::size_t>(x)].push_back(y);
            adj[static_cast<std::size_t>(y)].push_back(x);
        }
        order.push_back(0);
        seen[0] = 1;
        for (std::size_t head = 0; head < order.size(); ++head) {
            const int x = order[head];
            for (int y : adj[static_cast<std::size_t>(x)]) {
                if (!seen[static_cast<std::size_t>(y)]) {
                    seen[static_cast<std::size_t>(y)] = 1;
                    children[static_cast<std::size_t>(x)].push_back(y);
                    order.push_back(y);
                }
            }
        }
    }
    auto add_node = [&nd](NiceKind kind, Vertex v, int c0, int c1,
                          VertexSet bag) {
        NiceNode node;
        node.kind = kind;
        node.vertex = v;
        node.child0 = c0;
        node.child1 = c1;
        node.bag = std::move(bag);
        nd.nodes.push_back(std::move(node));
        return static_cast<int>(nd.nodes.size()) - 1;
    };
    // Raises a fresh chain from the empty bag to `bag`.
    auto build_up = [&](const VertexSet& bag) {
        int top = add_node(NiceKind::Leaf, -1, -1, -1, {});
        VertexSet cur;
        for (Vertex v : bag) {
            cur.insert(std::lower_bound(cur.begin(), cur.end(), v), v);
            top = add_node(NiceKind::Introduce, v, top, -1, cur);
        }
        return top;
    };
    // Converts the chain ending at `top` with bag `from` into bag `to` by
    // forgetting what left and introducing what arrived, ascending.
    auto morph = [&](int top, const VertexSet& from, const VertexSet& to) {
        VertexSet cur = from;
        for (Vertex v : from) {
            if (!set_contains(to, v)) {
                cur.erase(std::lower_bound(cur.begin(), cur.end(), v));
                top = add_node(NiceKind::Forget, v, top, -1, cur);
            }
        }
        for (Vertex v : to) {
            if (!set_contains(from, v)) {
                cur.insert(std::lower_bound(cur.begin(), cur.end(), v), v);
                top = add_node(NiceKind::Introduce, v, top, -1, cur);
            }
        }
        return top;
    };
    // Children before parents: walk the BFS order backwards.
    std::vector<int> top_of(static_cast<std::size_t>(b), -1);
    for (std::size_t i = order.size(); i-- > 0;) {
        const int x = order[i];
        const VertexSet& bag = td.bags[static_cast<std::size_t>(x)];
        const std::vector<int>& kids = children[static_cast<std::size_t>(x)];
        int acc = -1;
        for (int c : kids) {
            const int morphed =
                morph(top_of[static_cast<std::size_t>(c)],
                      td.bags[static_cast<std::size_t>(c)], bag);
            if (acc == -1) {
                acc = morphed;
            } else {
                acc = add_node(NiceKind::Join, -1, acc, morphed, bag);
            }
        }
        if (acc == -1) {
            acc = build_up(bag);
        }
        top_of[static_cast<std::size_t>(x)] = acc;
    }
    // Drain the root bag so the sweep finishes on an empty interface.
    int top = top_of[0];
    VertexSet cur = td.bags[0];
    while (!cur.empty()) {
        const Vertex v = cur.front();
        cur.erase(cur.begin());
        top = add_node(NiceKind::Forget, v, top, -1, cur);
    }
    return nd;
}

void validate_nice(const Graph& g, const NiceDecomposition& nd) {
    if (nd.nodes.empty()) {
        invalid("empty normal form");
    }
    if (nd.n != g.vertex_count()) {
        invalid("normal form vertex count mismatch");
    }
    const int count = static_cast<int>(nd.nodes.size());
    std::vector<int> used(static_cast<std::size_t>(count), 0);
    std::vector<int> forgotten(static_cast<std::size_t>(nd.n), 0);
    std::size_t settled_edges = 0;
    for (int i = 0; i < count; ++i) {
        const NiceNode& node = nd.nodes[static_cast<std::size_t>(i)];
        for (int c : {node.child0, node.child1}) {
            if (c >= 0) {
                if (c >= i) {
                    invalid("child does not precede its parent");
                }
                ++used[static_cast<std::size_t>(c)];
            }
        }
        const auto& bag = node.bag;
        switch (node.kind) {
            case NiceKind::Leaf:
                if (!bag.empty() || node.child0 >= 0 || node.child1 >= 0) {
                    invalid("leaf node must be bare");
                }
                break;
            case NiceKind::Introduce: {
                if (node.child0 < 0 || node.child1 >= 0 || !set_contains(bag, node.vertex)) {
                    invalid("introduce node malformed");
                }
                VertexSet expect = bag;
                expect.erase(std::lower_bound(expect.begin(), expect.end(), node.vertex));
                if (nd.nodes[static_cast<std::size_t>(node.child0)].bag != expect) {
                    invalid("introduce node changes more than one vertex");
                }
                break;
            }
            case NiceKind::Forget: {
                if (node.child0 < 0 || node.child1 >= 0 || set_contains(bag, node.vertex)) {
                    invalid("forget node malformed");
                }
                VertexSet expect = bag;
                expect.insert(
                    std::lower_bound(expect.begin(), expect.end(), node.vertex),
                    node.vertex);
                if (nd.nodes[static_cast<std::size_t>(node.child0)].bag != expect) {
                    invalid("forget node changes more than one vertex");
                }
                ++forgotten[static_cast<std::size_t>(node.vertex)];
                for (Vertex u : g.neighbors(node.vertex)) {
                    settled_edges += set_contains(bag, u) ? 1 : 0;
                }
                break;
            }
            case NiceKind::Join:
                if (node.child0 < 0 || node.child1 < 0 ||
                    nd.nodes[static_cast<std::size_t>(node.child0)].bag != bag ||
                    nd.nodes[static_cast<std::size_t>(node.child1)].bag != bag) {
                    invalid("join node bags disagree");
                }
                break;
        }
    }
    if (!nd.nodes.back().bag.empty()) {
        invalid("root bag is not empty");
    }
    for (int i = 0; i + 1 < count; ++i) {
        if (used[static_cast<std::size_t>(i)] != 1) {
            invalid("normal form nodes do not form a tree");
        }
    }
    if (used[static_cast<std::size_t>(count - 1)] != 0) {
        invalid("root node has a parent");
    }
    for (Vertex v = 0; v < nd.n; ++v) {
        if (forgotten[static_cast<std::size_t>(v)] != 1) {
            invalid("vertex " + std::to_string(v + 1) + " is forgotten " +
                    std::to_string(forgotten[static_cast<std::size_t>(v)]) +
                    " times");
        }
    }
    if (settled_edges != g.edge_count()) {
        invalid("forgets settle " + std::to_string(settled_edges) +
                " edges, expected " + std::to_string(g.edge_count()));
    }
}

}  // namespace muvc
