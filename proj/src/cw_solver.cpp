#include "muvc/cw_solver.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

#include "muvc/min_vc.hpp"

namespace muvc {

namespace {

void check_char(const CwChar& chr, int i, int j) {
    if (chr.alpha.size() != chr.beta.size() || chr.alpha.empty() ||
        (chr.alpha.size() & (chr.alpha.size() - 1)) != 0) {
        throw GraphError("characteristic vectors are malformed");
    }
    const std::size_t slots = chr.alpha.size();
    for (int label : {i, j}) {
        if (label < 1 || (std::size_t{1} << (label - 1)) >= slots) {
            throw GraphError("label " + std::to_string(label) +
                             " outside the characteristic width");
        }
    }
    if (i == j) {
        throw GraphError("operation needs two distinct labels");
    }
}

std::size_t slot_count(int width) {
    if (width < 1 || width > kMaxCwLabel) {
        throw GraphError("width " + std::to_string(width) + " outside [1, " +
                         std::to_string(kMaxCwLabel) + "]");
    }
    return std::size_t{1} << width;
}

}  // namespace

CwChar cw_singleton_kept(int width, int label) {
    const std::size_t slots = slot_count(width);
    if (label < 1 || label > width) {
        throw GraphError("label outside the declared width");
    }
    CwChar chr;
    chr.alpha.resize(slots);
    chr.beta.assign(slots, 1);
    for (std::size_t I = 0; I < slots; ++I) {
        chr.alpha[I] = (I >> (label - 1)) & 1 ? 1 : 0;
    }
    return chr;
}

CwChar cw_singleton_deleted(int width) {
    const std::size_t slots = slot_count(width);
    CwChar chr;
    chr.alpha.assign(slots, 0);
    chr.beta.assign(slots, 1);
    return chr;
}

CwChar cw_apply_connect(const CwChar& in, int i, int j) {
    check_char(in, i, j);
    const std::size_t slots = in.alpha.size();
    const std::size_t bi = std::size_t{1} << (i - 1);
    const std::size_t bj = std::size_t{1} << (j - 1);
    CwChar out;
    out.alpha.resize(slots);
    out.beta.resize(slots);
    for (std::size_t I = 0; I < slots; ++I) {
        if ((I & (bi | bj)) != 0) {
            // One full side already covers every new edge.
            out.alpha[I] = in.alpha[I];
            out.beta[I] = in.beta[I];
            continue;
        }
        const std::int32_t with_i = in.alpha[I | bi];
        const std::int32_t with_j = in.alpha[I | bj];
        out.alpha[I] = std::min(with_i, with_j);
        if (with_i < with_j) {
            out.beta[I] = in.beta[I | bi];
        } else if (with_i > with_j) {
            out.beta[I] = in.beta[I | bj];
        } else if (in.beta[I | bi] == 1 && in.beta[I | bj] == 1 &&
                   with_i == in.alpha[I | bi | bj]) {
            // Each side admits exactly one optimal cover and a cover of the
            // same size contains both sides, so the two branches describe
            // one and the same cover.
            out.beta[I] = 1;
        } else {
            out.beta[I] = 2;
        }
    }
    return out;
}

CwChar cw_apply_relabel(const CwChar& in, int i, int j) {
    check_char(in, i, j);
    const std::size_t slots = in.alpha.size();
    const std::size_t bi = std::size_t{1} << (i - 1);
    const std::size_t bj = std::size_t{1} << (j - 1);
    CwChar out;
    out.alpha.resize(slots);
    out.beta.resize(slots);
    for (std::size_t I = 0; I < slots; ++I) {
        const std::size_t src = (I & bj) != 0 ? (I | bi) : (I & ~bi);
        out.alpha[I] = in.alpha[src];
        out.beta[I] = in.beta[src];
    }
    return out;
}

CwChar cw_combine_union(const CwChar& a, const CwChar& b) {
    if (a.alpha.size() != b.alpha.size()) {
        throw GraphError("characteristic widths disagree");
    }
    const std::size_t slots = a.alpha.size();
    CwChar out;
    out.alpha.resize(slots);
    out.beta.resize(slots);
    for (std::size_t I = 0; I < slots; ++I) {
        out.alpha[I] = a.alpha[I] + b.alpha[I];
        out.beta[I] =
            static_cast<std::uint8_t>(std::min<int>(2, a.beta[I] * b.beta[I]));
    }
    return out;
}

std::vector<CwChar> empty_set_characteristics(const CwExpression& e) {
    validate_cw_expression(e);
    const int width = std::max(1, cw_width(e));
    std::vector<CwChar> out(e.nodes.size());
    for (std::size_t idx = 0; idx < e.nodes.size(); ++idx) {
        const CwNode& node = e.nodes[idx];
        switch (node.kind) {
            case CwKind::Singleton:
                out[idx] = cw_singleton_kept(width, node.label);
                break;
            case CwKind::Union:
                out[idx] =
                    cw_combine_union(out[static_cast<std::size_t>(node.child0)],
                                     out[static_cast<std::size_t>(node.child1)]);
                break;
            case CwKind::Connect:
                out[idx] = cw_apply_connect(
                    out[static_cast<std::size_t>(node.child0)], node.i, node.j);
                break;
            case CwKind::Relabel:
                out[idx] = cw_apply_relabel(
                    out[static_cast<std::size_t>(node.child0)], node.i, node.j);
                break;
        }
    }
    return out;
}

namespace {

struct Entry {
    CwChar chr;
    std::int64_t size = 0;
    std::uint8_t op = 0;  // 0 kept, 1 deleted, 2 unary, 3 union
    std::string ckey0;
    std::string ckey1;
};

using Table = std::map<std::string, Entry>;

std::string char_key(const std::vector<std::int32_t>& alpha,
                     const std::vector<std::uint8_t>& beta) {
    std::string key;
    key.reserve(alpha.size() * 5);
    for (std::size_t I = 0; I < alpha.size(); ++I) {
        const std::uint32_t raw = static_cast<std::uint32_t>(alpha[I]);
        key.push_back(static_cast<char>(raw & 0xFF));
        key.push_back(static_cast<char>((raw >> 8) & 0xFF));
        key.push_back(static_cast<char>((raw >> 16) & 0xFF));
        key.push_back(static_cast<char>((raw >> 24) & 0xFF));
        key.push_back(static_cast<char>(beta[I]));
    }
    return key;
}

struct SweepContext {
    int width = 1;
    std::int64_t budget = -1;  // negative: unbounded
    bool keyed_by_gap = false;
    bool check_invariants = false;
    const std::vector<CwChar>* first_pass = nullptr;  // set when needed
    const std::vector<std::size_t>* present_labels = nullptr;
    CwSolveStats stats;
};

std::string entry_key(const SweepContext& ctx, std::size_t node_index,
                      const Entry& entry) {
    if (!ctx.keyed_by_gap) {
        return char_key(entry.chr.alpha, entry.chr.beta);
    }
    const CwChar& base = (*ctx.first_pass)[node_index];
    std::vector<std::int32_t> gap(entry.chr.alpha.size());
    for (std::size_t I = 0; I < gap.size(); ++I) {
        gap[I] = base.alpha[I] - entry.chr.alpha[I];
    }
    return char_key(gap, entry.chr.beta);
}

// Gatekeeper: asserts the structural invariants, applies the budget
// pruning, and keeps the smallest deletion count per characteristic.
void emplace_entry(SweepContext& ctx, Table& table, std::size_t node_index,
                   Entry&& entry) {
    const std::size_t slots = entry.chr.alpha.size();
    for (std::size_t I = 0; I < slots; ++I) {
        if (entry.chr.alpha[I] < 0) {
            throw std::logic_error("cw dp: negative cover size");
        }
        for (int bit = 0; bit < ctx.width; ++bit) {
            const std::size_t J = I | (std::size_t{1} << bit);
            if (entry.chr.alpha[I] > entry.chr.alpha[J]) {
                throw std::logic_error("cw dp: alpha not monotone");
            }
        }
    }
    if (ctx.first_pass != nullptr) {
        const CwChar& base = (*ctx.first_pass)[node_index];
        bool over = false;
        for (std::size_t I = 0; I < slots; ++I) {
            const std::int64_t gap = base.alpha[I] - entry.chr.alpha[I];
            if (gap < 0 ||
                (ctx.check_invariants && gap > entry.size)) {
                throw std::logic_error("cw dp: gap outside the deletion bound");
            }
            if (ctx.budget >= 0 && gap > ctx.budget) {
                over = true;
            }
        }
        if (over) {
            ++ctx.stats.pruned_entries;
            return;
        }
    }
    if (ctx.check_invariants && ctx.present_labels != nullptr) {
        const std::size_t present = (*ctx.present_labels)[node_index];
        for (int bit = 0; bit < ctx.width; ++bit) {
            if ((present >> bit) & 1) {
                continue;
            }
            for (std::size_t I = 0; I < slots; ++I) {
                if (entry.chr.alpha[I] !=
                    entry.chr.alpha[I | (std::size_t{1} << bit)]) {
                    throw std::logic_error("cw dp: absent label changes alpha");
                }
            }
        }
    }
    std::string key = entry_key(ctx, node_index, entry);
    auto it = table.find(key);
    if (it == table.end()) {
        table.emplace(std::move(key), std::move(entry));
    } else if (entry.size < it->second.size) {
        it->second = std::move(entry);
    }
}

std::vector<std::size_t> track_present_labels(const CwExpression& e) {
    std::vector<std::size_t> present(e.nodes.size(), 0);
    for (std::size_t idx = 0; idx < e.nodes.size(); ++idx) {
        const CwNode& node = e.nodes[idx];
        switch (node.kind) {
            case CwKind::Singleton:
                present[idx] = std::size_t{1} << (node.label - 1);
                break;
            case CwKind::Union:
                present[idx] = present[static_cast<std::size_t>(node.child0)] |
                               present[static_cast<std::size_t>(node.child1)];
                break;
            case CwKind::Connect:
                present[idx] = present[static_cast<std::size_t>(node.child0)];
                break;
            case CwKind::Relabel: {
                const std::size_t below =
                    present[static_cast<std::size_t>(node.child0)];
                const std::size_t bi = std::size_t{1} << (node.i - 1);
                const std::size_t bj = std::size_t{1} << (node.j - 1);
                present[idx] = (below & bi) != 0 ? (below & ~bi) | bj : below;
                break;
            }
        }
    }
    return present;
}

std::vector<Table> sweep_tables(const CwExpression& e, SweepContext& ctx) {
    ctx.stats.dp_nodes = e.nodes.size();
    ctx.stats.width = ctx.width;
    std::vector<Table> tables(e.nodes.size());
    for (std::size_t idx = 0; idx < e.nodes.size(); ++idx) {
        const CwNode& node = e.nodes[idx];
        Table& table = tables[idx];
        switch (node.kind) {
            case CwKind::Singleton: {
                Entry kept;
                kept.chr = cw_singleton_kept(ctx.width, node.label);
                kept.op = 0;
                emplace_entry(ctx, table, idx, std::move(kept));
                Entry deleted;
                deleted.chr = cw_singleton_deleted(ctx.width);
                deleted.size = 1;
                deleted.op = 1;
                emplace_entry(ctx, table, idx, std::move(deleted));
                break;
            }
            case CwKind::Union: {
                const Table& left = tables[static_cast<std::size_t>(node.child0)];
                const Table& right = tables[static_cast<std::size_t>(node.child1)];
                for (const auto& [akey, aentry] : left) {
                    for (const auto& [bkey, bentry] : right) {
                        Entry entry;
                        entry.chr = cw_combine_union(aentry.chr, bentry.chr);
                        entry.size = aentry.size + bentry.size;
                        entry.op = 3;
                        entry.ckey0 = akey;
                        entry.ckey1 = bkey;
                        emplace_entry(ctx, table, idx, std::move(entry));
                    }
                }
                break;
            }
            case CwKind::Connect:
            case CwKind::Relabel: {
                const Table& child = tables[static_cast<std::size_t>(node.child0)];
                for (const auto& [ckey, centry] : child) {
                    Entry entry;
                    entry.chr = node.kind == CwKind::Connect
                                    ? cw_apply_connect(centry.chr, node.i, node.j)
                                    : cw_apply_relabel(centry.chr, node.i, node.j);
                    entry.size = centry.size;
                    entry.op = 2;
                    entry.ckey0 = ckey;
                    emplace_entry(ctx, table, idx, std::move(entry));
                }
                break;
            }
        }
        ctx.stats.max_table_entries =
            std::max(ctx.stats.max_table_entries, table.size());
        ctx.stats.total_entries += table.size();
    }
    return tables;
}

CwSolveResult finish_solve(const CwExpression& e, SweepContext& ctx,
                           CwSolveStats* stats) {
    const std::vector<Table> tables = sweep_tables(e, ctx);
    const Table& root = tables.back();
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    const std::string* best_key = nullptr;
    for (const auto& [key, entry] : root) {
        if (entry.chr.beta[0] == 1 && entry.size < best) {
            best = entry.size;
            best_key = &key;
        }
    }
    CwSolveResult result;
    if (best_key == nullptr || (ctx.budget >= 0 && best > ctx.budget)) {
        result.feasible = false;
        result.opt = -1;
        if (stats != nullptr) {
            *stats = ctx.stats;
        }
        return result;
    }
    result.opt = best;
    // Deleted singletons are identified by walking the winning entry down.
    std::vector<char> deleted_creation_order;
    {
        std::vector<std::size_t> singleton_of(e.nodes.size(), 0);
        Vertex created = 0;
        for (std::size_t idx = 0; idx < e.nodes.size(); ++idx) {
            if (e.nodes[idx].kind == CwKind::Singleton) {
                singleton_of[idx] = static_cast<std::size_t>(created++);
            }
        }
        deleted_creation_order.assign(static_cast<std::size_t>(created), 0);
        std::vector<std::pair<std::size_t, const std::string*>> walk;
        walk.emplace_back(e.nodes.size() - 1, best_key);
        while (!walk.empty()) {
            const auto [index, key] = walk.back();
            walk.pop_back();
            const Entry& entry = tables[index].at(*key);
            const CwNode& node = e.nodes[index];
            switch (entry.op) {
                case 0:
                    break;
                case 1:
                    deleted_creation_order[singleton_of[index]] = 1;
                    break;
                case 2:
                    walk.emplace_back(static_cast<std::size_t>(node.child0),
                                      &entry.ckey0);
                    break;
                case 3:
                    walk.emplace_back(static_cast<std::size_t>(node.child0),
                                      &entry.ckey0);
                    walk.emplace_back(static_cast<std::size_t>(node.child1),
                                      &entry.ckey1);
                    break;
            }
        }
    }
    // Map creation order to the evaluated graph's vertex ids.
    const LabeledGraph lg = eval_cw_expression(e);
    {
        std::unordered_map<std::string, Vertex> id_of;
        for (Vertex v = 0; v < lg.graph.vertex_count(); ++v) {
            id_of.emplace(lg.name[static_cast<std::size_t>(v)], v);
        }
        Vertex created = 0;
        for (const CwNode& node : e.nodes) {
            if (node.kind != CwKind::Singleton) {
                continue;
            }
            if (deleted_creation_order[static_cast<std::size_t>(created)]) {
                result.deletions.push_back(id_of.at(node.name));
            }
            ++created;
        }
    }
    std::sort(result.deletions.begin(), result.deletions.end());
    if (static_cast<std::int64_t>(result.deletions.size()) != result.opt) {
        throw std::logic_error("cw dp: witness size disagrees with the optimum");
    }
    const InducedSubgraph rest = delete_vertices(lg.graph, result.deletions);
    const MinVcResult cover = min_vc(rest.graph);
    if (cover.size != tables.back().at(*best_key).chr.alpha[0]) {
        throw std::logic_error("cw dp: root cover size disagrees with the table");
    }
    result.cover_size = cover.size;
    for (Vertex v : cover.cover) {
        result.unique_cover.push_back(rest.to_original[static_cast<std::size_t>(v)]);
    }
    if (stats != nullptr) {
        *stats = ctx.stats;
    }
    return result;
}

}  // namespace

std::vector<CwTableEntry> cw_dp(const CwExpression& e) {
    validate_cw_expression(e);
    SweepContext ctx;
    ctx.width = std::max(1, cw_width(e));
    const std::vector<Table> tables = sweep_tables(e, ctx);
    std::vector<CwTableEntry> out;
    out.reserve(tables.back().size());
    for (const auto& [key, entry] : tables.back()) {
        out.push_back(CwTableEntry{entry.chr, entry.size});
    }
    return out;
}

CwSolveResult solve_muvc_cw(const CwExpression& e, const CwSolveOptions& options,
                            CwSolveStats* stats) {
    validate_cw_expression(e);
    SweepContext ctx;
    ctx.width = std::max(1, cw_width(e));
    ctx.check_invariants = options.check_invariants;
    std::vector<CwChar> first_pass;
    std::vector<std::size_t> present;
    if (options.check_invariants) {
        first_pass = empty_set_characteristics(e);
        present = track_present_labels(e);
        ctx.first_pass = &first_pass;
        ctx.present_labels = &present;
    }
    return finish_solve(e, ctx, stats);
}

CwSolveResult solve_muvc_cw_fpt(const CwExpression& e, std::int64_t k,
                                const CwSolveOptions& options,
                                CwSolveStats* stats) {
    if (k < 0) {
        throw GraphError("budget must be nonnegative");
    }
    validate_cw_expression(e);
    SweepContext ctx;
    ctx.width = std::max(1, cw_width(e));
    ctx.budget = k;
    ctx.keyed_by_gap = true;
    ctx.check_invariants = options.check_invariants;
    const std::vector<CwChar> first_pass = empty_set_characteristics(e);
    ctx.first_pass = &first_pass;
    std::vector<std::size_t> present;
    if (options.check_invariants) {
        present = track_present_labels(e);
        ctx.present_labels = &present;
    }
    return finish_solve(e, ctx, stats);
}

}  // namespace muvc
