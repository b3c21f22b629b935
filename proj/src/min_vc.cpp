#include "muvc/min_vc.hpp"

#include <algorithm>
#include <limits>

namespace muvc {

namespace {

// Branch-and-bound state over the input graph. Vertices leave the residual
// graph either by entering the cover or by becoming isolated; a trail of
// removals per search frame makes backtracking cheap.
class VcSearch {
public:
    explicit VcSearch(const Graph& g)
        : g_(g),
          alive_(static_cast<std::size_t>(g.vertex_count()), 1),
          deg_(static_cast<std::size_t>(g.vertex_count()), 0) {
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            deg_[static_cast<std::size_t>(v)] = g.degree(v);
        }
        alive_edges_ = static_cast<std::int64_t>(g.edge_count());
    }

    // Applies the forbidden preprocessing: every forbidden vertex leaves the
    // graph and pushes its surviving neighbors into the cover.
    void exclude(const VertexSet& forbidden) {
        for (Vertex v : forbidden) {
            if (v < 0 || v >= g_.vertex_count()) {
                throw GraphError("forbidden vertex " + std::to_string(v) + " out of range");
            }
        }
        for (Vertex v : forbidden) {
            if (!alive_[static_cast<std::size_t>(v)]) {
                continue;
            }
            for (Vertex u : g_.neighbors(v)) {
                if (!alive_[static_cast<std::size_t>(u)]) {
                    continue;
                }
                if (set_contains(forbidden, u)) {
                    throw UncoverableError("uncoverable: edge {" + std::to_string(v + 1) + ", " +
                                           std::to_string(u + 1) +
                                           "} has both endpoints forbidden");
                }
                take(u);
            }
            if (alive_[static_cast<std::size_t>(v)]) {
                discard(v);
            }
        }
    }

    MinVcResult run() {
        best_size_ = std::numeric_limits<std::int64_t>::max();
        search();
        MinVcResult result;
        result.size = best_size_;
        result.cover = best_cover_;
        std::sort(result.cover.begin(), result.cover.end());
        return result;
    }

private:
    bool alive(Vertex v) const { return alive_[static_cast<std::size_t>(v)] != 0; }

    void drop_edges_of(Vertex v) {
        alive_[static_cast<std::size_t>(v)] = 0;
        for (Vertex u : g_.neighbors(v)) {
            if (alive(u)) {
                const int d = --deg_[static_cast<std::size_t>(u)];
                --alive_edges_;
                if (d <= 1) {
                    worklist_.push_back(u);
                }
            }
        }
    }

    void take(Vertex v) {
        drop_edges_of(v);
        picked_.push_back(v);
        trail_.push_back(v);
        trail_kind_.push_back(1);
    }

    void discard(Vertex v) {
        drop_edges_of(v);
        trail_.push_back(v);
        trail_kind_.push_back(0);
    }

    void undo_to(std::size_t mark) {
        while (trail_.size() > mark) {
            const Vertex v = trail_.back();
            const char kind = trail_kind_.back();
            trail_.pop_back();
            trail_kind_.pop_back();
            alive_[static_cast<std::size_t>(v)] = 1;
            int d = 0;
            for (Vertex u : g_.neighbors(v)) {
                if (alive(u) && u != v) {
                    ++deg_[static_cast<std::size_t>(u)];
                    ++alive_edges_;
                    ++d;
                }
            }
            // Removals undo in reverse order, so the neighbors alive now are
            // exactly the ones alive when v left; recount v's degree from them.
            deg_[static_cast<std::size_t>(v)] = d;
            if (kind == 1) {
                picked_.pop_back();
            }
        }
    }

    // Exhaustively applies isolated-vertex and pendant reductions, driven by
    // a worklist of vertices whose residual degree dropped to one or zero.
    void reduce() {
        worklist_.clear();
        for (Vertex v = 0; v < g_.vertex_count(); ++v) {
            if (alive(v) && deg_[static_cast<std::size_t>(v)] <= 1) {
                worklist_.push_back(v);
            }
        }
        while (!worklist_.empty()) {
            const Vertex v = worklist_.back();
            worklist_.pop_back();
            if (!alive(v)) {
                continue;
            }
            const int d = deg_[static_cast<std::size_t>(v)];
            if (d == 0) {
                discard(v);
            } else if (d == 1) {
                for (Vertex u : g_.neighbors(v)) {
                    if (alive(u)) {
                        take(u);
                        break;
                    }
                }
            }
        }
    }

    // With every residual degree equal to two, components are plain cycles;
    // a cycle of length k needs ceil(k / 2) cover vertices.
    std::int64_t finish_cycles(std::vector<Vertex>& extra) const {
        std::vector<char> visited(alive_.size(), 0);
        std::int64_t added = 0;
        for (Vertex start = 0; start < g_.vertex_count(); ++start) {
            if (!alive(start) || visited[static_cast<std::size_t>(start)]) {
                continue;
            }
            std::vector<Vertex> cycle;
            Vertex prev = -1;
            Vertex cur = start;
            do {
                visited[static_cast<std::size_t>(cur)] = 1;
                cycle.push_back(cur);
                Vertex next = -1;
                for (Vertex u : g_.neighbors(cur)) {
                    if (alive(u) && u != prev) {
                        next = u;
                        break;
                    }
                }
                prev = cur;
                cur = next;
            } while (cur != start && cur != -1);
            const std::size_t k = cycle.size();
            for (std::size_t i = 1; i < k; i += 2) {
                extra.push_back(cycle[i]);
            }
            if (k % 2 == 1) {
                extra.push_back(cycle[k - 1]);
            }
            added += static_cast<std::int64_t>((k + 1) / 2);
        }
        return added;
    }

    // Greedy maximal matching on the residual graph; any cover must contain
    // one endpoint per matched edge.
    std::int64_t matching_bound() const {
        std::vector<char> matched(alive_.size(), 0);
        std::int64_t size = 0;
        for (Vertex v = 0; v < g_.vertex_count(); ++v) {
            if (!alive(v) || matched[static_cast<std::size_t>(v)]) {
                continue;
            }
            for (Vertex u : g_.neighbors(v)) {
                if (alive(u) && !matched[static_cast<std::size_t>(u)]) {
                    matched[static_cast<std::size_t>(v)] = 1;
                    matched[static_cast<std::size_t>(u)] = 1;
                    ++size;
                    break;
                }
            }
        }
        return size;
    }

    void record_candidate(const std::vector<Vertex>& extra) {
        const std::int64_t total = static_cast<std::int64_t>(picked_.size() + extra.size());
        if (total < best_size_) {
            best_size_ = total;
            best_cover_ = picked_;
            best_cover_.insert(best_cover_.end(), extra.begin(), extra.end());
        }
    }

    void search() {
        const std::size_t mark = trail_.size();
        reduce();
        if (alive_edges_ == 0) {
            record_candidate({});
            undo_to(mark);
            return;
        }
        if (static_cast<std::int64_t>(picked_.size()) + matching_bound() >= best_size_) {
            undo_to(mark);
            return;
        }
        // After reduction every residual degree is at least two.
        Vertex pivot = -1;
        int pivot_deg = -1;
        for (Vertex v = 0; v < g_.vertex_count(); ++v) {
            if (alive(v) && deg_[static_cast<std::size_t>(v)] > pivot_deg) {
                pivot = v;
                pivot_deg = deg_[static_cast<std::size_t>(v)];
            }
        }
        if (pivot_deg <= 2) {
            std::vector<Vertex> extra;
            finish_cycles(extra);
            record_candidate(extra);
            undo_to(mark);
            return;
        }
        // Branch: pivot in the cover, or its whole neighborhood in the cover.
        {
            const std::size_t inner = trail_.size();
            take(pivot);
            search();
            undo_to(inner);
        }
        {
            const std::size_t inner = trail_.size();
            std::vector<Vertex> around;
            for (Vertex u : g_.neighbors(pivot)) {
                if (alive(u)) {
                    around.push_back(u);
                }
            }
            for (Vertex u : around) {
                take(u);
            }
            search();
            undo_to(inner);
        }
        undo_to(mark);
    }

    const Graph& g_;
    std::vector<char> alive_;
    std::vector<int> deg_;
    std::int64_t alive_edges_ = 0;
    std::vector<Vertex> picked_;
    std::vector<Vertex> trail_;
    std::vector<char> trail_kind_;
    std::vector<Vertex> worklist_;
    std::int64_t best_size_ = 0;
    std::vector<Vertex> best_cover_;
};

}  // namespace

MinVcResult min_vc(const Graph& g, const VertexSet& forbidden) {
    VcSearch search(g);
    search.exclude(make_vertex_set(forbidden));
    return search.run();
}

std::int64_t min_vc_size(const Graph& g, const VertexSet& forbidden) {
    return min_vc(g, forbidden).size;
}

UniquenessResult is_unique_min_vc(const Graph& g) {
    UniquenessResult result;
    if (g.edge_count() == 0) {
        result.unique = true;
        return result;
    }
    MinVcResult base = min_vc(g);
    result.cover = base.cover;
    for (Vertex v : base.cover) {
        if (min_vc_size(g, {v}) == base.size) {
            result.unique = false;
            return result;
        }
    }
    result.unique = true;
    return result;
}

}  // namespace muvc
