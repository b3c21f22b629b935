#include "muvc/tree_solver.hpp"

#include <algorithm>
#include <array>
#include <future>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

#include "muvc/min_vc.hpp"

namespace muvc {

namespace {

// State of a rooted subtree after committing a deletion set that leaves the
// root in place. delta is the capped gap between the best cover avoiding the
// root and the best cover using it; b0 and b1 count those optima, capped at
// two since only "exactly one" ever matters.
constexpr int kSlots = 12;
constexpr std::int32_t kAbsent = std::numeric_limits<std::int32_t>::max();

int slot_index(int delta, int b0, int b1) {
    return delta * 4 + (b0 - 1) * 2 + (b1 - 1);
}
int slot_delta(int s) { return s / 4; }
int slot_b0(int s) { return ((s >> 1) & 1) + 1; }
int slot_b1(int s) { return (s & 1) + 1; }

int cap2(std::int64_t x) { return static_cast<int>(std::min<std::int64_t>(x, 2)); }

enum BackKind : std::uint16_t {
    kBackLeaf = 0,
    kBackExtendKeep = 1,
    kBackExtendDelete = 2,
    kBackJoin = 3,
};

std::uint16_t encode_back(BackKind kind, int slot_a, int slot_b) {
    return static_cast<std::uint16_t>((kind << 8) | (slot_a << 4) | slot_b);
}
BackKind back_kind(std::uint16_t b) { return static_cast<BackKind>(b >> 8); }
int back_slot_a(std::uint16_t b) { return (b >> 4) & 0xF; }
int back_slot_b(std::uint16_t b) { return b & 0xF; }

enum class OpKind : std::uint8_t { Leaf, Extend, Join };

// One node of the evaluation plan for a component: a vertex by itself, a
// child subtree hung under a fresh root, or two subtrees sharing a root.
struct TreeOp {
    OpKind kind;
    Vertex child_root = -1;  // Extend: the vertex becoming the non-root end
    std::int32_t a = -1;
    std::int32_t b = -1;
};

using SlotSizes = std::array<std::int32_t, kSlots>;
using SlotBacks = std::array<std::uint16_t, kSlots>;

struct ComponentPlan {
    Vertex root = -1;
    std::vector<TreeOp> ops;
};

struct ComponentOutcome {
    std::int64_t opt = 0;
    VertexSet deletions;
    std::size_t dp_nodes = 0;
    std::size_t max_state_slots = 0;
};

// Builds the bottom-up evaluation plan for one component of the forest,
// rooting it at its smallest vertex. Children are visited in ascending
// order and folded left to right.
ComponentPlan build_plan(const Graph& g, const std::vector<Vertex>& component,
                         std::vector<Vertex>& parent, std::vector<Vertex>& bfs,
                         std::vector<std::int32_t>& op_of) {
    ComponentPlan plan;
    plan.root = component.front();
    bfs.clear();
    bfs.push_back(plan.root);
    parent[static_cast<std::size_t>(plan.root)] = -1;
    for (std::size_t head = 0; head < bfs.size(); ++head) {
        const Vertex v = bfs[head];
        for (Vertex u : g.neighbors(v)) {
            if (u != parent[static_cast<std::size_t>(v)]) {
                parent[static_cast<std::size_t>(u)] = v;
                bfs.push_back(u);
            }
        }
    }
    plan.ops.reserve(2 * bfs.size());
    for (std::size_t i = bfs.size(); i-- > 0;) {
        const Vertex v = bfs[i];
        std::int32_t acc = -1;
        for (Vertex c : g.neighbors(v)) {
            if (c == parent[static_cast<std::size_t>(v)]) {
                continue;
            }
            TreeOp ext;
            ext.kind = OpKind::Extend;
            ext.child_root = c;
            ext.a = op_of[static_cast<std::size_t>(c)];
            plan.ops.push_back(ext);
            const std::int32_t ext_index = static_cast<std::int32_t>(plan.ops.size() - 1);
            if (acc == -1) {
                acc = ext_index;
            } else {
                TreeOp join;
                join.kind = OpKind::Join;
                join.a = acc;
                join.b = ext_index;
                plan.ops.push_back(join);
                acc = static_cast<std::int32_t>(plan.ops.size() - 1);
            }
        }
        if (acc == -1) {
            TreeOp leaf;
            leaf.kind = OpKind::Leaf;
            plan.ops.push_back(leaf);
            acc = static_cast<std::int32_t>(plan.ops.size() - 1);
        }
        op_of[static_cast<std::size_t>(v)] = acc;
    }
    return plan;
}

void apply_extend(const SlotSizes& child, SlotSizes& out, SlotBacks& backs) {
    out.fill(kAbsent);
    // Keep the child root: the new root stays optional, so the gap collapses
    // to zero unless the child preferred avoiding its own root.
    for (int cs = 0; cs < kSlots; ++cs) {
        if (child[static_cast<std::size_t>(cs)] == kAbsent) {
            continue;
        }
        const int d = slot_delta(cs);
        const int b0 = slot_b0(cs);
        const int b1 = slot_b1(cs);
        const int nd = d >= 1 ? 0 : 1;
        const int nb0 = b1;
        const int nb1 = d == 0 ? b0 : (d >= 2 ? b1 : 2);
        const int target = slot_index(nd, nb0, nb1);
        const std::int32_t cand = child[static_cast<std::size_t>(cs)];
        if (cand < out[static_cast<std::size_t>(target)]) {
            out[static_cast<std::size_t>(target)] = cand;
            backs[static_cast<std::size_t>(target)] = encode_back(kBackExtendKeep, cs, 0);
        }
    }
    // Delete the child root: the edge to the new root disappears with it.
    for (int cs = 0; cs < kSlots; ++cs) {
        if (child[static_cast<std::size_t>(cs)] == kAbsent) {
            continue;
        }
        const int b1 = slot_b1(cs);
        const int target = slot_index(0, b1, b1);
        const std::int32_t cand = child[static_cast<std::size_t>(cs)] + 1;
        if (cand < out[static_cast<std::size_t>(target)]) {
            out[static_cast<std::size_t>(target)] = cand;
            backs[static_cast<std::size_t>(target)] = encode_back(kBackExtendDelete, cs, 0);
        }
    }
}

void apply_join(const SlotSizes& left, const SlotSizes& right, SlotSizes& out,
                SlotBacks& backs) {
    out.fill(kAbsent);
    for (int as = 0; as < kSlots; ++as) {
        if (left[static_cast<std::size_t>(as)] == kAbsent) {
            continue;
        }
        for (int bs = 0; bs < kSlots; ++bs) {
            if (right[static_cast<std::size_t>(bs)] == kAbsent) {
                continue;
            }
            const int nd = std::min(2, slot_delta(as) + slot_delta(bs));
            const int nb0 = cap2(static_cast<std::int64_t>(slot_b0(as)) * slot_b0(bs));
            const int nb1 = cap2(static_cast<std::int64_t>(slot_b1(as)) * slot_b1(bs));
            const int target = slot_index(nd, nb0, nb1);
            const std::int32_t cand =
                left[static_cast<std::size_t>(as)] + right[static_cast<std::size_t>(bs)];
            if (cand < out[static_cast<std::size_t>(target)]) {
                out[static_cast<std::size_t>(target)] = cand;
                backs[static_cast<std::size_t>(target)] = encode_back(kBackJoin, as, bs);
            }
        }
    }
}

ComponentOutcome solve_component(const ComponentPlan& plan) {
    const std::size_t op_count = plan.ops.size();
    std::vector<SlotSizes> sizes(op_count);
    std::vector<SlotBacks> backs(op_count);
    ComponentOutcome outcome;
    outcome.dp_nodes = op_count;
    for (std::size_t i = 0; i < op_count; ++i) {
        const TreeOp& op = plan.ops[i];
        switch (op.kind) {
            case OpKind::Leaf:
                sizes[i].fill(kAbsent);
                sizes[i][static_cast<std::size_t>(slot_index(0, 1, 1))] = 0;
                backs[i][static_cast<std::size_t>(slot_index(0, 1, 1))] =
                    encode_back(kBackLeaf, 0, 0);
                break;
            case OpKind::Extend:
                apply_extend(sizes[static_cast<std::size_t>(op.a)], sizes[i], backs[i]);
                break;
            case OpKind::Join:
                apply_join(sizes[static_cast<std::size_t>(op.a)],
                           sizes[static_cast<std::size_t>(op.b)], sizes[i], backs[i]);
                break;
        }
        std::size_t realized = 0;
        for (std::int32_t s : sizes[i]) {
            realized += s != kAbsent;
        }
        outcome.max_state_slots = std::max(outcome.max_state_slots, realized);
    }
    // Pick the cheapest finish, preferring to keep the root on ties. A zero
    // gap with a lone root-free optimum or a wide gap with a lone root-using
    // optimum is already unique; otherwise the root itself can be deleted
    // whenever the root-using optimum is lone.
    const SlotSizes& top = sizes[op_count - 1];
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    int best_slot = -1;
    bool root_deleted = false;
    for (int s = 0; s < kSlots; ++s) {
        if (top[static_cast<std::size_t>(s)] == kAbsent) {
            continue;
        }
        const bool unique_without_root = slot_delta(s) == 0 && slot_b0(s) == 1;
        const bool unique_with_root = slot_delta(s) == 2 && slot_b1(s) == 1;
        if (unique_without_root || unique_with_root) {
            const std::int64_t cand = top[static_cast<std::size_t>(s)];
            if (cand < best) {
                best = cand;
                best_slot = s;
                root_deleted = false;
            }
        }
    }
    for (int s = 0; s < kSlots; ++s) {
        if (top[static_cast<std::size_t>(s)] == kAbsent || slot_b1(s) != 1) {
            continue;
        }
        const std::int64_t cand = top[static_cast<std::size_t>(s)] + 1;
        if (cand < best) {
            best = cand;
            best_slot = s;
            root_deleted = true;
        }
    }
    if (best_slot < 0) {
        throw std::logic_error("tree dp produced no finishable state");
    }
    outcome.opt = best;
    if (root_deleted) {
        outcome.deletions.push_back(plan.root);
    }
    std::vector<std::pair<std::int32_t, int>> stack;
    stack.emplace_back(static_cast<std::int32_t>(op_count - 1), best_slot);
    while (!stack.empty()) {
        const auto [op_index, slot] = stack.back();
        stack.pop_back();
        const std::uint16_t b = backs[static_cast<std::size_t>(op_index)][static_cast<std::size_t>(slot)];
        const TreeOp& op = plan.ops[static_cast<std::size_t>(op_index)];
        switch (back_kind(b)) {
            case kBackLeaf:
                break;
            case kBackExtendKeep:
                stack.emplace_back(op.a, back_slot_a(b));
                break;
            case kBackExtendDelete:
                outcome.deletions.push_back(op.child_root);
                stack.emplace_back(op.a, back_slot_a(b));
                break;
            case kBackJoin:
                stack.emplace_back(op.a, back_slot_a(b));
                stack.emplace_back(op.b, back_slot_b(b));
                break;
        }
    }
    std::sort(outcome.deletions.begin(), outcome.deletions.end());
    return outcome;
}

// Exact counterpart of the compact state: tracks the two cover costs
// (avoiding and using the root, the latter not counting the root itself)
// without capping their gap. Used only to validate the compact tables.
struct FullKey {
    std::int64_t a0 = 0;
    std::int64_t a1 = 0;
    int b0 = 1;
    int b1 = 1;
    bool operator<(const FullKey& o) const {
        return std::tie(a0, a1, b0, b1) < std::tie(o.a0, o.a1, o.b0, o.b1);
    }
};
using FullTable = std::map<FullKey, std::int64_t>;

void full_insert(FullTable& t, const FullKey& k, std::int64_t size) {
    auto [it, fresh] = t.emplace(k, size);
    if (!fresh && size < it->second) {
        it->second = size;
    }
}

void check_component(const ComponentPlan& plan) {
    const std::size_t op_count = plan.ops.size();
    std::vector<SlotSizes> sizes(op_count);
    std::vector<SlotBacks> backs(op_count);
    std::vector<FullTable> full(op_count);
    for (std::size_t i = 0; i < op_count; ++i) {
        const TreeOp& op = plan.ops[i];
        switch (op.kind) {
            case OpKind::Leaf:
                sizes[i].fill(kAbsent);
                sizes[i][static_cast<std::size_t>(slot_index(0, 1, 1))] = 0;
                full_insert(full[i], FullKey{0, 0, 1, 1}, 0);
                break;
            case OpKind::Extend: {
                apply_extend(sizes[static_cast<std::size_t>(op.a)], sizes[i], backs[i]);
                for (const auto& [k, s] : full[static_cast<std::size_t>(op.a)]) {
                    FullKey keep;
                    keep.a0 = k.a1 + 1;
                    keep.a1 = std::min(k.a0, k.a1 + 1);
                    keep.b0 = k.b1;
                    keep.b1 = k.a0 < k.a1 + 1 ? k.b0
                              : (k.a0 > k.a1 + 1 ? k.b1 : cap2(k.b0 + k.b1));
                    full_insert(full[i], keep, s);
                    full_insert(full[i], FullKey{k.a1, k.a1, k.b1, k.b1}, s + 1);
                }
                break;
            }
            case OpKind::Join: {
                apply_join(sizes[static_cast<std::size_t>(op.a)],
                           sizes[static_cast<std::size_t>(op.b)], sizes[i], backs[i]);
                for (const auto& [ka, sa] : full[static_cast<std::size_t>(op.a)]) {
                    for (const auto& [kb, sb] : full[static_cast<std::size_t>(op.b)]) {
                        FullKey m;
                        m.a0 = ka.a0 + kb.a0;
                        m.a1 = ka.a1 + kb.a1;
                        m.b0 = cap2(static_cast<std::int64_t>(ka.b0) * kb.b0);
                        m.b1 = cap2(static_cast<std::int64_t>(ka.b1) * kb.b1);
                        full_insert(full[i], m, sa + sb);
                    }
                }
                break;
            }
        }
        // Collapsing the exact table must land exactly on the compact one.
        SlotSizes image;
        image.fill(kAbsent);
        for (const auto& [k, s] : full[i]) {
            if (k.a1 > k.a0) {
                throw std::logic_error("tree dp check: root-using cost exceeds root-free cost");
            }
            const int d = static_cast<int>(std::min<std::int64_t>(2, k.a0 - k.a1));
            const int idx = slot_index(d, k.b0, k.b1);
            image[static_cast<std::size_t>(idx)] =
                std::min(image[static_cast<std::size_t>(idx)], static_cast<std::int32_t>(s));
        }
        if (image != sizes[i]) {
            throw std::logic_error("tree dp check: compact table mismatch at node " +
                                   std::to_string(i));
        }
    }
}

}  // namespace

TreeSolveResult solve_muvc_tree(const Graph& g, const TreeSolveOptions& options,
                                TreeSolveStats* stats) {
    if (!is_forest(g)) {
        throw GraphError("input graph is not a forest");
    }
    const std::vector<VertexSet> components = connected_components(g);
    std::vector<ComponentPlan> plans;
    plans.reserve(components.size());
    {
        std::vector<Vertex> parent(static_cast<std::size_t>(g.vertex_count()), -1);
        std::vector<std::int32_t> op_of(static_cast<std::size_t>(g.vertex_count()), -1);
        std::vector<Vertex> bfs;
        for (const VertexSet& comp : components) {
            plans.push_back(build_plan(g, comp, parent, bfs, op_of));
        }
    }
    std::vector<ComponentOutcome> outcomes(plans.size());
    const int threads = std::max(1, options.threads);
    if (threads == 1 || plans.size() <= 1) {
        for (std::size_t i = 0; i < plans.size(); ++i) {
            outcomes[i] = solve_component(plans[i]);
        }
    } else {
        const int workers = static_cast<int>(
            std::min<std::size_t>(static_cast<std::size_t>(threads), plans.size()));
        std::vector<std::future<void>> futures;
        futures.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            futures.push_back(std::async(std::launch::async, [&, w] {
                for (std::size_t i = static_cast<std::size_t>(w); i < plans.size();
                     i += static_cast<std::size_t>(workers)) {
                    outcomes[i] = solve_component(plans[i]);
                }
            }));
        }
        for (auto& f : futures) {
            f.get();
        }
    }
    TreeSolveResult result;
    TreeSolveStats local_stats;
    for (const ComponentOutcome& out : outcomes) {
        result.opt += out.opt;
        result.deletions.insert(result.deletions.end(), out.deletions.begin(),
                                out.deletions.end());
        local_stats.dp_nodes += out.dp_nodes;
        local_stats.max_state_slots = std::max(local_stats.max_state_slots, out.max_state_slots);
    }
    std::sort(result.deletions.begin(), result.deletions.end());
    if (options.cross_check) {
        for (const ComponentPlan& plan : plans) {
            check_component(plan);
        }
        local_stats.cross_checked = true;
    }
    InducedSubgraph rest = delete_vertices(g, result.deletions);
    MinVcResult cover = min_vc(rest.graph);
    result.cover_size = cover.size;
    for (Vertex v : cover.cover) {
        result.unique_cover.push_back(rest.to_original[static_cast<std::size_t>(v)]);
    }
    result.mvc_size = min_vc_size(g);
    if (stats != nullptr) {
        *stats = local_stats;
    }
    return result;
}

}  // namespace muvc
