#include "muvc/tw_solver.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "muvc/min_vc.hpp"

namespace muvc {

namespace {

constexpr std::size_t kMaxBag = 20;

// One table row: for every subset D of the current bag (bitmask over bag
// positions), the extra cover cost saved by also deleting D (delta, always
// normalized so delta[0] == 0) and the capped count of covers attaining it.
// size is the number of vertices already committed to the deletion set.
struct Entry {
    std::vector<std::int32_t> delta;
    std::vector<std::uint8_t> beta;
    std::int64_t size = 0;
    std::uint8_t op = 0;  // 0 leaf, 1 keep/copy, 2 delete-forgotten, 3 join
    std::string ckey0;
    std::string ckey1;
};

using Table = std::map<std::string, Entry>;

std::string profile_key(const std::vector<std::int32_t>& delta,
                        const std::vector<std::uint8_t>& beta) {
    std::string key;
    key.reserve(delta.size() * 5);
    for (std::size_t i = 0; i < delta.size(); ++i) {
        const std::uint32_t raw = static_cast<std::uint32_t>(delta[i]);
        key.push_back(static_cast<char>(raw & 0xFF));
        key.push_back(static_cast<char>((raw >> 8) & 0xFF));
        key.push_back(static_cast<char>((raw >> 16) & 0xFF));
        key.push_back(static_cast<char>((raw >> 24) & 0xFF));
        key.push_back(static_cast<char>(beta[i]));
    }
    return key;
}

// Inserts a one-bit gap at `pos`, so a parent-bag subset indexes into the
// child bag that still holds the forgotten vertex at that position.
std::uint32_t widen_mask(std::uint32_t mask, int pos) {
    const std::uint32_t low = mask & ((1u << pos) - 1);
    const std::uint32_t high = (mask >> pos) << (pos + 1);
    return low | high;
}

// Removes the bit at `pos`, mapping a bag subset to the child bag that did
// not contain the introduced vertex.
std::uint32_t narrow_mask(std::uint32_t mask, int pos) {
    const std::uint32_t low = mask & ((1u << pos) - 1);
    const std::uint32_t high = (mask >> (pos + 1)) << pos;
    return low | high;
}

int position_in(const VertexSet& bag, Vertex v) {
    return static_cast<int>(
        std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
}

struct SolveContext {
    const Graph& g;
    const TwSolveOptions& options;
    TwSolveStats stats;
    int max_degree = 0;
};

// Common gatekeeper for every produced entry: the normalization and sign
// invariants always hold, the degree bound is asserted or used for pruning
// on request, and among equal profiles the smallest size wins.
void emplace_entry(SolveContext& ctx, Table& table, Entry&& entry) {
    if (entry.delta[0] != 0) {
        throw std::logic_error("width dp: empty-subset gap is not zero");
    }
    bool over_bound = false;
    for (std::size_t m = 0; m < entry.delta.size(); ++m) {
        if (entry.delta[m] < 0) {
            throw std::logic_error("width dp: negative cost gap");
        }
        if (entry.delta[m] >
            ctx.max_degree * std::popcount(static_cast<std::uint32_t>(m))) {
            over_bound = true;
        }
    }
    if (over_bound) {
        if (ctx.options.check_invariants) {
            throw std::logic_error("width dp: gap exceeds degree bound");
        }
        if (ctx.options.truncate_by_degree) {
            ++ctx.stats.truncated_entries;
            return;
        }
    }
    std::string key = profile_key(entry.delta, entry.beta);
    auto it = table.find(key);
    if (it == table.end()) {
        table.emplace(std::move(key), std::move(entry));
    } else if (entry.size < it->second.size) {
        it->second = std::move(entry);
    }
}

Table make_leaf_table(SolveContext& ctx) {
    Table table;
    Entry entry;
    entry.delta = {0};
    entry.beta = {1};
    entry.op = 0;
    emplace_entry(ctx, table, std::move(entry));
    return table;
}

Table apply_introduce(SolveContext& ctx, const Table& child, const NiceNode& node) {
    const int pos = position_in(node.bag, node.vertex);
    const std::size_t slots = std::size_t{1} << node.bag.size();
    Table table;
    for (const auto& [ckey, centry] : child) {
        Entry entry;
        entry.delta.resize(slots);
        entry.beta.resize(slots);
        for (std::uint32_t m = 0; m < slots; ++m) {
            const std::uint32_t cm = narrow_mask(m, pos);
            entry.delta[m] = centry.delta[cm];
            entry.beta[m] = centry.beta[cm];
        }
        entry.size = centry.size;
        entry.op = 1;
        entry.ckey0 = ckey;
        emplace_entry(ctx, table, std::move(entry));
    }
    return table;
}

Table apply_forget(SolveContext& ctx, const Table& child, const NiceNode& node) {
    const VertexSet& bag = node.bag;
    const Vertex v = node.vertex;
    // Position v held in the child's bag; parent subsets widen into it.
    VertexSet child_bag = bag;
    child_bag.insert(std::lower_bound(child_bag.begin(), child_bag.end(), v), v);
    const int pos = position_in(child_bag, v);
    std::uint32_t nv_mask = 0;
    for (Vertex u : ctx.g.neighbors(v)) {
        if (set_contains(bag, u)) {
            nv_mask |= 1u << position_in(bag, u);
            ++ctx.stats.edges_settled;
        }
    }
    const std::size_t slots = std::size_t{1} << bag.size();
    Table table;
    // Keep v: its settled edges force it into the cover unless every bagged
    // neighbor is deleted, in which case staying out is also on the table.
    for (const auto& [ckey, centry] : child) {
        const std::int32_t dyv = centry.delta[std::size_t{1} << pos];
        const std::int64_t gamma = (nv_mask == 0 && dyv <= 1) ? 0 : dyv - 1;
        Entry entry;
        entry.delta.resize(slots);
        entry.beta.resize(slots);
        for (std::uint32_t m = 0; m < slots; ++m) {
            const std::uint32_t keep_m = widen_mask(m, pos);
            const std::uint32_t plus_m = keep_m | (1u << pos);
            const bool neighbors_deleted = (nv_mask & m) == nv_mask;
            const std::int32_t d_keep = centry.delta[keep_m];
            const std::int32_t d_plus = centry.delta[plus_m];
            if (neighbors_deleted && d_plus <= d_keep + 1) {
                entry.delta[m] = static_cast<std::int32_t>(d_keep - gamma);
            } else {
                entry.delta[m] = static_cast<std::int32_t>(d_plus - gamma - 1);
            }
            if (neighbors_deleted && d_plus < d_keep + 1) {
                entry.beta[m] = centry.beta[keep_m];
            } else if (!neighbors_deleted || d_plus > d_keep + 1) {
                entry.beta[m] = centry.beta[plus_m];
            } else {
                entry.beta[m] = 2;
            }
        }
        entry.size = centry.size;
        entry.op = 1;
        entry.ckey0 = ckey;
        emplace_entry(ctx, table, std::move(entry));
    }
    // Delete v: shift the profile onto the v-deleted half and pay one.
    for (const auto& [ckey, centry] : child) {
        const std::int32_t dyv = centry.delta[std::size_t{1} << pos];
        Entry entry;
        entry.delta.resize(slots);
        entry.beta.resize(slots);
        for (std::uint32_t m = 0; m < slots; ++m) {
            const std::uint32_t plus_m = widen_mask(m, pos) | (1u << pos);
            entry.delta[m] = centry.delta[plus_m] - dyv;
            entry.beta[m] = centry.beta[plus_m];
        }
        entry.size = centry.size + 1;
        entry.op = 2;
        entry.ckey0 = ckey;
        emplace_entry(ctx, table, std::move(entry));
    }
    return table;
}

Table apply_join(SolveContext& ctx, const Table& left, const Table& right,
                 const NiceNode& node) {
    const std::size_t slots = std::size_t{1} << node.bag.size();
    Table table;
    for (const auto& [akey, aentry] : left) {
        for (const auto& [bkey, bentry] : right) {
            Entry entry;
            entry.delta.resize(slots);
            entry.beta.resize(slots);
            for (std::size_t m = 0; m < slots; ++m) {
                entry.delta[m] = aentry.delta[m] + bentry.delta[m];
                entry.beta[m] = static_cast<std::uint8_t>(
                    std::min<int>(2, aentry.beta[m] * bentry.beta[m]));
            }
            entry.size = aentry.size + bentry.size;
            entry.op = 3;
            entry.ckey0 = akey;
            entry.ckey1 = bkey;
            emplace_entry(ctx, table, std::move(entry));
        }
    }
    return table;
}

}  // namespace

TwSolveResult solve_muvc_tw(const Graph& g, const TreeDecomposition& td,
                            const TwSolveOptions& options, TwSolveStats* stats) {
    NiceDecomposition nd = make_nice(g, td);
    validate_nice(g, nd);
    for (const NiceNode& node : nd.nodes) {
        if (node.bag.size() > kMaxBag) {
            throw GraphError("decomposition bag exceeds " + std::to_string(kMaxBag) +
                             " vertices");
        }
    }
    SolveContext ctx{g, options, {}, g.max_degree()};
    ctx.stats.dp_nodes = nd.nodes.size();
    std::vector<Table> tables(nd.nodes.size());
    for (std::size_t i = 0; i < nd.nodes.size(); ++i) {
        const NiceNode& node = nd.nodes[i];
        ctx.stats.max_bag = std::max(ctx.stats.max_bag, node.bag.size());
        switch (node.kind) {
            case NiceKind::Leaf:
                tables[i] = make_leaf_table(ctx);
                break;
            case NiceKind::Introduce:
                tables[i] = apply_introduce(
                    ctx, tables[static_cast<std::size_t>(node.child0)], node);
                break;
            case NiceKind::Forget:
                tables[i] = apply_forget(
                    ctx, tables[static_cast<std::size_t>(node.child0)], node);
                break;
            case NiceKind::Join:
                tables[i] = apply_join(ctx, tables[static_cast<std::size_t>(node.child0)],
                                       tables[static_cast<std::size_t>(node.child1)],
                                       node);
                break;
        }
        ctx.stats.max_table_entries =
            std::max(ctx.stats.max_table_entries, tables[i].size());
        ctx.stats.total_entries += tables[i].size();
        // Free child tables that are no longer needed for the sweep; keep
        // them for the witness walk instead, so no freeing here.
    }
    const Table& root = tables.back();
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    const std::string* best_key = nullptr;
    for (const auto& [key, entry] : root) {
        if (entry.beta[0] == 1 && entry.size < best) {
            best = entry.size;
            best_key = &key;
        }
    }
    if (best_key == nullptr) {
        throw std::logic_error("width dp: no finishable entry at the root");
    }
    TwSolveResult result;
    result.opt = best;
    // Walk the winning entry back down, collecting deleted vertices at the
    // forgets that paid for them.
    std::vector<std::pair<std::size_t, const std::string*>> walk;
    walk.emplace_back(nd.nodes.size() - 1, best_key);
    while (!walk.empty()) {
        const auto [index, key] = walk.back();
        walk.pop_back();
        const Entry& entry = tables[index].at(*key);
        const NiceNode& node = nd.nodes[index];
        switch (entry.op) {
            case 0:
                break;
            case 2:
                result.deletions.push_back(node.vertex);
                [[fallthrough]];
            case 1:
                walk.emplace_back(static_cast<std::size_t>(node.child0), &entry.ckey0);
                break;
            case 3:
                walk.emplace_back(static_cast<std::size_t>(node.child0), &entry.ckey0);
                walk.emplace_back(static_cast<std::size_t>(node.child1), &entry.ckey1);
                break;
        }
    }
    std::sort(result.deletions.begin(), result.deletions.end());
    if (static_cast<std::int64_t>(result.deletions.size()) != result.opt) {
        throw std::logic_error("width dp: witness size disagrees with the optimum");
    }
    InducedSubgraph rest = delete_vertices(g, result.deletions);
    MinVcResult cover = min_vc(rest.graph);
    result.cover_size = cover.size;
    for (Vertex v : cover.cover) {
        result.unique_cover.push_back(rest.to_original[static_cast<std::size_t>(v)]);
    }
    if (stats != nullptr) {
        *stats = ctx.stats;
    }
    return result;
}

TwSolveResult solve_muvc_tw(const Graph& g, const TwSolveOptions& options,
                            TwSolveStats* stats) {
    return solve_muvc_tw(g, edge_bag_decomposition(g), options, stats);
}

}  // namespace muvc
