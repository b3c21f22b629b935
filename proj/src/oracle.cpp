#include "muvc/oracle.hpp"

#include <algorithm>
#include <string>

#include "muvc/min_vc.hpp"

namespace muvc {

namespace {

// Advances a strictly increasing index vector to the next k-combination of
// {0, ..., limit - 1} in lexicographic order. Returns false after the last.
bool next_combination(std::vector<int>& idx, int limit) {
    const int k = static_cast<int>(idx.size());
    for (int i = k - 1; i >= 0; --i) {
        if (idx[static_cast<std::size_t>(i)] < limit - (k - i)) {
            ++idx[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j) {
                idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
            }
            return true;
        }
    }
    return false;
}

std::vector<int> first_combination(int k) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        idx[static_cast<std::size_t>(i)] = i;
    }
    return idx;
}

// Collects every cover of size exactly `target` by branching on the lowest
// uncovered edge: either u joins the cover or u stays out and v must join.
// The two branches are disjoint, so no cover is produced twice.
void collect_covers(const std::vector<std::pair<Vertex, Vertex>>& edges,
                    std::int64_t target, VertexSet& chosen,
                    std::vector<char>& out, std::vector<VertexSet>& covers) {
    std::pair<Vertex, Vertex> open{-1, -1};
    for (const auto& [u, v] : edges) {
        const bool covered = std::binary_search(chosen.begin(), chosen.end(), u) ||
                             std::binary_search(chosen.begin(), chosen.end(), v);
        if (!covered) {
            open = {u, v};
            break;
        }
    }
    if (open.first == -1) {
        covers.push_back(chosen);
        return;
    }
    if (static_cast<std::int64_t>(chosen.size()) >= target) {
        return;
    }
    const auto [u, v] = open;
    if (!out[static_cast<std::size_t>(u)]) {
        chosen.insert(std::lower_bound(chosen.begin(), chosen.end(), u), u);
        collect_covers(edges, target, chosen, out, covers);
        chosen.erase(std::lower_bound(chosen.begin(), chosen.end(), u));
    }
    const char u_was_out = out[static_cast<std::size_t>(u)];
    out[static_cast<std::size_t>(u)] = 1;
    if (!out[static_cast<std::size_t>(v)]) {
        chosen.insert(std::lower_bound(chosen.begin(), chosen.end(), v), v);
        collect_covers(edges, target, chosen, out, covers);
        chosen.erase(std::lower_bound(chosen.begin(), chosen.end(), v));
    }
    out[static_cast<std::size_t>(u)] = u_was_out;
}

}  // namespace

std::vector<VertexSet> enumerate_min_vcs(const Graph& g) {
    if (g.vertex_count() > 26) {
        throw GraphError("enumerate_min_vcs is limited to 26 vertices, got " +
                         std::to_string(g.vertex_count()));
    }
    const std::int64_t opt = min_vc_size(g);
    const std::vector<std::pair<Vertex, Vertex>> edges = g.edges();
    VertexSet chosen;
    std::vector<char> out(static_cast<std::size_t>(g.vertex_count()), 0);
    std::vector<VertexSet> covers;
    collect_covers(edges, opt, chosen, out, covers);
    std::sort(covers.begin(), covers.end());
    return covers;
}

MuvcOracleResult solve_muvc_bruteforce(const Graph& g, std::optional<int> k_max) {
    const Vertex n = g.vertex_count();
    if (!k_max && n > 22) {
        throw GraphError("solve_muvc_bruteforce without a budget is limited to "
                         "22 vertices, got " + std::to_string(n));
    }
    const int top = k_max ? std::min(*k_max, static_cast<int>(n)) : static_cast<int>(n);
    MuvcOracleResult result;
    for (int k = 0; k <= top; ++k) {
        std::vector<int> idx = first_combination(k);
        do {
            VertexSet removed(idx.begin(), idx.end());
            InducedSubgraph rest = delete_vertices(g, removed);
            UniquenessResult u = is_unique_min_vc(rest.graph);
            if (u.unique) {
                result.feasible = true;
                result.opt = k;
                result.deletions = removed;
                for (Vertex v : u.cover) {
                    result.unique_cover.push_back(rest.to_original[static_cast<std::size_t>(v)]);
                }
                return result;
            }
        } while (next_combination(idx, n));
    }
    return result;
}

PauvcOracleResult solve_pauvc_bruteforce(const Graph& g) {
    const std::vector<VertexSet> covers = enumerate_min_vcs(g);
    std::vector<std::uint32_t> cover_masks;
    cover_masks.reserve(covers.size());
    for (const VertexSet& c : covers) {
        std::uint32_t m = 0;
        for (Vertex v : c) {
            m |= 1u << v;
        }
        cover_masks.push_back(m);
    }
    VertexSet pool;
    {
        std::uint32_t u = 0;
        for (std::uint32_t m : cover_masks) {
            u |= m;
        }
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            if ((u >> v) & 1u) {
                pool.push_back(v);
            }
        }
    }
    PauvcOracleResult result;
    const int pool_size = static_cast<int>(pool.size());
    for (int k = 0; k <= pool_size; ++k) {
        std::vector<int> idx = first_combination(k);
        do {
            std::uint32_t pin_mask = 0;
            for (int i : idx) {
                pin_mask |= 1u << pool[static_cast<std::size_t>(i)];
            }
            int supersets = 0;
            std::size_t hit = 0;
            for (std::size_t c = 0; c < cover_masks.size(); ++c) {
                if ((pin_mask & cover_masks[c]) == pin_mask) {
                    ++supersets;
                    hit = c;
                }
            }
            if (supersets == 1) {
                result.feasible = true;
                result.opt = k;
                for (int i : idx) {
                    result.pinned.push_back(pool[static_cast<std::size_t>(i)]);
                }
                result.cover = covers[hit];
                return result;
            }
        } while (next_combination(idx, pool_size));
    }
    return result;
}

}  // namespace muvc
