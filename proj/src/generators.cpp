#include "muvc/generators.hpp"

#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <utility>

namespace muvc {

namespace {

[[noreturn]] void parse_fail(const std::string& source, std::size_t line,
                             const std::string& what) {
    throw ParseError(source + ":" + std::to_string(line) + ": " + what);
}

std::string variable_name(const Literal& lit) {
    return (lit.type_x ? "x" : "y") + std::to_string(lit.index);
}

}  // namespace

Graph gen_gk(int k) {
    if (k < 3) {
        throw GraphError("separation family starts at member 3, got " +
                         std::to_string(k));
    }
    Graph g(static_cast<Vertex>(9 + 2 * (k - 3)));
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 3);
    g.add_edge(3, 4);
    g.add_edge(0, 5);
    g.add_edge(5, 6);
    g.add_edge(0, 7);
    g.add_edge(0, 8);
    for (int t = 4; t <= k; ++t) {
        const Vertex mid = static_cast<Vertex>(9 + 2 * (t - 4));
        g.add_edge(0, mid);
        g.add_edge(mid, mid + 1);
    }
    return g;
}

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next_below(std::uint64_t bound) {
    return bound == 0 ? 0 : next() % bound;
}

double SplitMix64::next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

Graph gen_random_tree(Vertex n, std::uint64_t seed) {
    if (n <= 0) {
        return Graph(0);
    }
    Graph g(n);
    if (n == 1) {
        return g;
    }
    if (n == 2) {
        g.add_edge(0, 1);
        return g;
    }
    SplitMix64 rng(seed);
    std::vector<Vertex> seq(static_cast<std::size_t>(n) - 2);
    for (Vertex& s : seq) {
        s = static_cast<Vertex>(rng.next_below(static_cast<std::uint64_t>(n)));
    }
    // Standard sequence decoding: repeatedly attach the smallest current
    // leaf to the next sequence entry, then join the last two leaves.
    std::vector<int> degree(static_cast<std::size_t>(n), 1);
    for (Vertex s : seq) {
        ++degree[static_cast<std::size_t>(s)];
    }
    std::set<Vertex> leaves;
    for (Vertex v = 0; v < n; ++v) {
        if (degree[static_cast<std::size_t>(v)] == 1) {
            leaves.insert(v);
        }
    }
    for (Vertex s : seq) {
        const Vertex leaf = *leaves.begin();
        leaves.erase(leaves.begin());
        g.add_edge(leaf, s);
        if (--degree[static_cast<std::size_t>(s)] == 1) {
            leaves.insert(s);
        }
    }
    const Vertex a = *leaves.begin();
    const Vertex b = *std::next(leaves.begin());
    g.add_edge(a, b);
    return g;
}

Graph gen_random_graph(Vertex n, double p, std::uint64_t seed) {
    Graph g(n < 0 ? 0 : n);
    SplitMix64 rng(seed);
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        for (Vertex v = u + 1; v < g.vertex_count(); ++v) {
            if (rng.next_unit() < p) {
                g.add_edge(u, v);
            }
        }
    }
    return g;
}

Cotree gen_random_cotree(Vertex n, std::uint64_t seed) {
    Cotree t;
    if (n <= 0) {
        return t;
    }
    SplitMix64 rng(seed);
    std::vector<int> roots;
    for (Vertex v = 0; v < n; ++v) {
        t.nodes.push_back(CotreeNode{CotreeKind::Leaf, v, -1, -1});
        roots.push_back(static_cast<int>(v));
    }
    while (roots.size() > 1) {
        std::size_t a = static_cast<std::size_t>(rng.next_below(roots.size()));
        std::size_t b = static_cast<std::size_t>(rng.next_below(roots.size() - 1));
        if (b >= a) {
            ++b;
        }
        if (a > b) {
            std::swap(a, b);
        }
        const CotreeKind kind =
            (rng.next() & 1) != 0 ? CotreeKind::Join : CotreeKind::Union;
        t.nodes.push_back(CotreeNode{kind, -1, roots[a], roots[b]});
        roots[a] = static_cast<int>(t.nodes.size()) - 1;
        roots.erase(roots.begin() + static_cast<std::ptrdiff_t>(b));
    }
    return t;
}

void validate_formula(const TypedFormula& f) {
    if (f.x_count < 0 || f.y_count < 0) {
        throw GraphError("invalid formula: negative variable count");
    }
    std::vector<int> x_occ(static_cast<std::size_t>(f.x_count), 0);
    std::vector<int> y_occ(static_cast<std::size_t>(f.y_count), 0);
    for (const auto& clause : f.clauses) {
        for (const Literal& lit : clause) {
            const int count = lit.type_x ? f.x_count : f.y_count;
            if (lit.index < 1 || lit.index > count) {
                throw GraphError("invalid formula: variable " + variable_name(lit) +
                                 " out of range [1, " + std::to_string(count) + "]");
            }
            auto& occ = lit.type_x ? x_occ : y_occ;
            ++occ[static_cast<std::size_t>(lit.index - 1)];
        }
    }
    for (int i = 0; i < f.x_count; ++i) {
        if (x_occ[static_cast<std::size_t>(i)] == 0) {
            throw GraphError("invalid formula: variable x" + std::to_string(i + 1) +
                             " never occurs in a clause");
        }
    }
    for (int i = 0; i < f.y_count; ++i) {
        if (y_occ[static_cast<std::size_t>(i)] == 0) {
            throw GraphError("invalid formula: variable y" + std::to_string(i + 1) +
                             " never occurs in a clause");
        }
    }
}

namespace {

Literal parse_literal(const std::string& tok, const std::string& source,
                      std::size_t line_no) {
    Literal lit;
    std::size_t pos = 0;
    if (pos < tok.size() && tok[pos] == '-') {
        lit.positive = false;
        ++pos;
    }
    if (pos >= tok.size() || (tok[pos] != 'x' && tok[pos] != 'y')) {
        parse_fail(source, line_no, "malformed literal '" + tok + "'");
    }
    lit.type_x = tok[pos] == 'x';
    ++pos;
    if (pos >= tok.size()) {
        parse_fail(source, line_no, "malformed literal '" + tok + "'");
    }
    long long value = 0;
    for (; pos < tok.size(); ++pos) {
        if (tok[pos] < '0' || tok[pos] > '9') {
            parse_fail(source, line_no, "malformed literal '" + tok + "'");
        }
        value = value * 10 + (tok[pos] - '0');
        if (value > 1000000) {
            parse_fail(source, line_no, "variable index too large in '" + tok + "'");
        }
    }
    if (value < 1) {
        parse_fail(source, line_no, "variable index must be at least 1 in '" + tok + "'");
    }
    lit.index = static_cast<int>(value);
    return lit;
}

}  // namespace

TypedFormula parse_formula(std::istream& in, const std::string& source) {
    TypedFormula f;
    std::string line;
    std::size_t line_no = 0;
    int headers = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream tokens(line);
        std::string first;
        if (!(tokens >> first)) {
            continue;
        }
        if (headers < 2) {
            const std::string expect = headers == 0 ? "x" : "y";
            if (first != expect) {
                parse_fail(source, line_no,
                           "expected '" + expect + " <count>' header, got '" + first + "'");
            }
            long long count = -1;
            if (!(tokens >> count) || count < 0) {
                parse_fail(source, line_no,
                           "malformed header, expected '" + expect + " <count>'");
            }
            std::string rest;
            if (tokens >> rest) {
                parse_fail(source, line_no, "trailing tokens after header");
            }
            (headers == 0 ? f.x_count : f.y_count) = static_cast<int>(count);
            ++headers;
            continue;
        }
        std::array<Literal, 3> clause;
        int got = 0;
        std::string tok = first;
        do {
            if (got == 3) {
                parse_fail(source, line_no, "clause needs exactly 3 literals");
            }
            const Literal lit = parse_literal(tok, source, line_no);
            const int limit = lit.type_x ? f.x_count : f.y_count;
            if (lit.index > limit) {
                parse_fail(source, line_no,
                           "variable " + variable_name(lit) + " out of range [1, " +
                               std::to_string(limit) + "]");
            }
            clause[static_cast<std::size_t>(got++)] = lit;
        } while (tokens >> tok);
        if (got != 3) {
            parse_fail(source, line_no,
                       "clause needs exactly 3 literals, found " + std::to_string(got));
        }
        f.clauses.push_back(clause);
    }
    if (headers < 2) {
        parse_fail(source, line_no, "missing variable count headers");
    }
    try {
        validate_formula(f);
    } catch (const GraphError& e) {
        throw ParseError(source + ": " + std::string(e.what()));
    }
    return f;
}

TypedFormula parse_formula_text(const std::string& text, const std::string& source) {
    std::istringstream in(text);
    return parse_formula(in, source);
}

TypedFormula load_formula(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    return parse_formula(in, path);
}

std::string format_formula(const TypedFormula& f) {
    std::ostringstream out;
    out << "x " << f.x_count << "\n";
    out << "y " << f.y_count << "\n";
    for (const auto& clause : f.clauses) {
        for (int s = 0; s < 3; ++s) {
            const Literal& lit = clause[static_cast<std::size_t>(s)];
            if (s > 0) {
                out << " ";
            }
            out << (lit.positive ? "" : "-") << (lit.type_x ? "x" : "y") << lit.index;
        }
        out << "\n";
    }
    return out.str();
}

bool uq_one_in_three_sat(const TypedFormula& f) {
    validate_formula(f);
    if (f.x_count + f.y_count > 24) {
        throw GraphError("formula too large to decide exhaustively (over 24 variables)");
    }
    const std::uint32_t x_lim = std::uint32_t{1} << f.x_count;
    const std::uint32_t y_lim = std::uint32_t{1} << f.y_count;
    for (std::uint32_t xm = 0; xm < x_lim; ++xm) {
        int fits = 0;
        for (std::uint32_t ym = 0; ym < y_lim && fits < 2; ++ym) {
            bool ok = true;
            for (const auto& clause : f.clauses) {
                int trues = 0;
                for (const Literal& lit : clause) {
                    const std::uint32_t mask = lit.type_x ? xm : ym;
                    const bool value = ((mask >> (lit.index - 1)) & 1) != 0;
                    trues += value == lit.positive ? 1 : 0;
                }
                if (trues != 1) {
                    ok = false;
                    break;
                }
            }
            fits += ok ? 1 : 0;
        }
        if (fits == 1) {
            return true;
        }
    }
    return false;
}

namespace {

std::string color_tag(int a) { return a % 2 == 1 ? "red" : "blue"; }

std::string ring_tag(int a) {
    const int r = (a - 1) % 4;
    return r == 1 || r == 2 ? "inner" : "outer";
}

}  // namespace

GadgetGraph gen_hardness_instance(const TypedFormula& f, const OccurrenceOrder& order) {
    validate_formula(f);
    const std::size_t m = f.clauses.size();

    std::vector<int> x_occ(static_cast<std::size_t>(f.x_count), 0);
    std::vector<int> y_occ(static_cast<std::size_t>(f.y_count), 0);
    for (const auto& clause : f.clauses) {
        for (const Literal& lit : clause) {
            ++(lit.type_x ? x_occ : y_occ)[static_cast<std::size_t>(lit.index - 1)];
        }
    }

    // Normalize the slot-to-occurrence assignment; the default consumes each
    // variable's occurrences in clause order.
    OccurrenceOrder ord;
    if (order.empty()) {
        std::vector<int> x_seen(static_cast<std::size_t>(f.x_count), 0);
        std::vector<int> y_seen(static_cast<std::size_t>(f.y_count), 0);
        for (const auto& clause : f.clauses) {
            std::array<int, 3> slots{};
            for (int s = 0; s < 3; ++s) {
                const Literal& lit = clause[static_cast<std::size_t>(s)];
                auto& seen = lit.type_x ? x_seen : y_seen;
                slots[static_cast<std::size_t>(s)] =
                    ++seen[static_cast<std::size_t>(lit.index - 1)];
            }
            ord.push_back(slots);
        }
    } else {
        if (order.size() != m) {
            throw GraphError("invalid occurrence order: expected " + std::to_string(m) +
                             " clause entries, got " + std::to_string(order.size()));
        }
        std::vector<std::set<int>> x_used(static_cast<std::size_t>(f.x_count));
        std::vector<std::set<int>> y_used(static_cast<std::size_t>(f.y_count));
        for (std::size_t t = 0; t < m; ++t) {
            for (int s = 0; s < 3; ++s) {
                const Literal& lit = f.clauses[t][static_cast<std::size_t>(s)];
                const int occ = (lit.type_x ? x_occ : y_occ)[static_cast<std::size_t>(lit.index - 1)];
                const int j = order[t][static_cast<std::size_t>(s)];
                if (j < 1 || j > occ) {
                    throw GraphError("invalid occurrence order: index " + std::to_string(j) +
                                     " out of range for variable " + variable_name(lit));
                }
                auto& used = (lit.type_x ? x_used : y_used)[static_cast<std::size_t>(lit.index - 1)];
                if (!used.insert(j).second) {
                    throw GraphError("invalid occurrence order: occurrence " +
                                     std::to_string(j) + " of variable " +
                                     variable_name(lit) + " assigned twice");
                }
            }
        }
        ord = order;
    }

    std::size_t total = 5 * m;
    for (int o : x_occ) {
        total += 12 * static_cast<std::size_t>(o) + 10;
    }
    for (int o : y_occ) {
        total += 12 * static_cast<std::size_t>(o);
    }

    GadgetGraph out;
    out.graph = Graph(static_cast<Vertex>(total));
    out.role.resize(total);
    Vertex cursor = 0;
    auto take = [&out, &cursor](std::string tag) {
        out.role[static_cast<std::size_t>(cursor)] = std::move(tag);
        return cursor++;
    };
    auto edge = [&out](Vertex u, Vertex v) { out.graph.add_edge(u, v); };

    for (std::size_t t = 0; t < m; ++t) {
        const std::string c = "c" + std::to_string(t + 1);
        const std::array<Vertex, 3> l{take(c + ":l1"), take(c + ":l2"), take(c + ":l3")};
        const Vertex w = take(c + ":w");
        const Vertex z = take(c + ":z");
        edge(l[0], l[1]);
        edge(l[1], l[2]);
        edge(l[0], l[2]);
        edge(l[0], w);
        edge(l[1], w);
        edge(l[2], w);
        edge(w, z);
        out.clause_l.push_back(l);
        out.clause_w.push_back(w);
        out.clause_z.push_back(z);
    }

    // Lays the cover vertices and their pendants over a list of ring edges.
    auto cover_ring = [&take, &edge](const std::vector<std::pair<Vertex, Vertex>>& spans,
                                     const std::vector<std::string>& w_tags,
                                     const std::vector<std::string>& z_tags) {
        for (std::size_t e = 0; e < spans.size(); ++e) {
            const Vertex wv = take(w_tags[e]);
            const Vertex zv = take(z_tags[e]);
            edge(spans[e].first, wv);
            edge(spans[e].second, wv);
            edge(wv, zv);
        }
    };

    for (int i = 1; i <= f.x_count; ++i) {
        const std::string gx = "x" + std::to_string(i);
        const int p = 4 * x_occ[static_cast<std::size_t>(i - 1)];
        std::vector<Vertex> ring(static_cast<std::size_t>(p));
        for (int a = 1; a <= p; ++a) {
            ring[static_cast<std::size_t>(a - 1)] = take(
                gx + ":v" + std::to_string(a) + ":" + color_tag(a) + ":" + ring_tag(a));
        }
        std::array<Vertex, 6> u{};
        for (int t = 1; t <= 6; ++t) {
            u[static_cast<std::size_t>(t - 1)] = take(gx + ":u" + std::to_string(t));
        }
        for (int a = 1; a < p; ++a) {
            edge(ring[static_cast<std::size_t>(a - 1)], ring[static_cast<std::size_t>(a)]);
        }
        edge(ring[static_cast<std::size_t>(p - 1)], u[0]);
        edge(u[0], u[3]);
        edge(u[3], ring[0]);
        edge(u[0], u[1]);
        edge(u[1], u[2]);
        edge(u[3], u[4]);
        edge(u[4], u[5]);
        std::vector<std::pair<Vertex, Vertex>> spans;
        std::vector<std::string> w_tags;
        std::vector<std::string> z_tags;
        for (int a = 1; a < p; ++a) {
            spans.emplace_back(ring[static_cast<std::size_t>(a - 1)],
                               ring[static_cast<std::size_t>(a)]);
            w_tags.push_back(gx + ":w" + std::to_string(a));
            z_tags.push_back(gx + ":z" + std::to_string(a));
        }
        spans.emplace_back(ring[static_cast<std::size_t>(p - 1)], u[0]);
        w_tags.push_back(gx + ":w" + std::to_string(p));
        z_tags.push_back(gx + ":z" + std::to_string(p));
        spans.emplace_back(u[0], u[3]);
        w_tags.push_back(gx + ":wu");
        z_tags.push_back(gx + ":zu");
        spans.emplace_back(u[3], ring[0]);
        w_tags.push_back(gx + ":w0");
        z_tags.push_back(gx + ":z0");
        cover_ring(spans, w_tags, z_tags);
        out.x_colored.push_back(std::move(ring));
        out.x_u.push_back(u);
    }

    for (int i = 1; i <= f.y_count; ++i) {
        const std::string gy = "y" + std::to_string(i);
        const int q = 4 * y_occ[static_cast<std::size_t>(i - 1)];
        std::vector<Vertex> ring(static_cast<std::size_t>(q));
        for (int a = 1; a <= q; ++a) {
            ring[static_cast<std::size_t>(a - 1)] = take(
                gy + ":v" + std::to_string(a) + ":" + color_tag(a) + ":" + ring_tag(a));
        }
        for (int a = 1; a < q; ++a) {
            edge(ring[static_cast<std::size_t>(a - 1)], ring[static_cast<std::size_t>(a)]);
        }
        edge(ring[static_cast<std::size_t>(q - 1)], ring[0]);
        std::vector<std::pair<Vertex, Vertex>> spans;
        std::vector<std::string> w_tags;
        std::vector<std::string> z_tags;
        for (int a = 1; a < q; ++a) {
            spans.emplace_back(ring[static_cast<std::size_t>(a - 1)],
                               ring[static_cast<std::size_t>(a)]);
            w_tags.push_back(gy + ":w" + std::to_string(a));
            z_tags.push_back(gy + ":z" + std::to_string(a));
        }
        spans.emplace_back(ring[static_cast<std::size_t>(q - 1)], ring[0]);
        w_tags.push_back(gy + ":w" + std::to_string(q));
        z_tags.push_back(gy + ":z" + std::to_string(q));
        cover_ring(spans, w_tags, z_tags);
        out.y_colored.push_back(std::move(ring));
    }

    auto ring_of = [&out](const Literal& lit) -> const std::vector<Vertex>& {
        return lit.type_x ? out.x_colored[static_cast<std::size_t>(lit.index - 1)]
                          : out.y_colored[static_cast<std::size_t>(lit.index - 1)];
    };

    // First wiring step: each literal slot's corner reaches into the
    // consumed quadruple, blue inner vertex for a positive literal and red
    // for a negative one.
    std::vector<std::array<int, 3>> attach_pos(m);
    for (std::size_t t = 0; t < m; ++t) {
        for (int s = 0; s < 3; ++s) {
            const Literal& lit = f.clauses[t][static_cast<std::size_t>(s)];
            const int j = ord[t][static_cast<std::size_t>(s)];
            const int a = 4 * (j - 1) + (lit.positive ? 2 : 3);
            edge(out.clause_l[t][static_cast<std::size_t>(s)],
                 ring_of(lit)[static_cast<std::size_t>(a - 1)]);
            attach_pos[t][static_cast<std::size_t>(s)] = a;
        }
    }

    // Second wiring step: three chords per clause between the ring
    // neighbors of consecutive slots' attachment points.
    for (std::size_t t = 0; t < m; ++t) {
        const std::vector<Vertex>& r1 = ring_of(f.clauses[t][0]);
        const std::vector<Vertex>& r2 = ring_of(f.clauses[t][1]);
        const std::vector<Vertex>& r3 = ring_of(f.clauses[t][2]);
        const int a1 = attach_pos[t][0];
        const int a2 = attach_pos[t][1];
        const int a3 = attach_pos[t][2];
        edge(r3[static_cast<std::size_t>(a3 - 2)], r1[static_cast<std::size_t>(a1)]);
        edge(r1[static_cast<std::size_t>(a1 - 2)], r2[static_cast<std::size_t>(a2)]);
        edge(r2[static_cast<std::size_t>(a2 - 2)], r3[static_cast<std::size_t>(a3)]);
    }

    return out;
}

std::string format_roles(const GadgetGraph& g) {
    std::ostringstream out;
    for (Vertex v = 0; v < g.graph.vertex_count(); ++v) {
        out << v + 1 << " " << g.role[static_cast<std::size_t>(v)] << "\n";
    }
    return out.str();
}

}  // namespace muvc
