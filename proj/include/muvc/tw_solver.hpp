#pragma once

// Solver for the smallest deletion set leaving a unique minimum vertex
// cover, parameterized by the width of a supplied tree decomposition.
// Tables live on the nodes of the normalized decomposition; each entry is a
// cover-cost profile over the subsets of the current bag.

#include <cstddef>
#include <cstdint>

#include "muvc/graph.hpp"
#include "muvc/tree_decomposition.hpp"

namespace muvc {

struct TwSolveOptions {
    // Drop profile entries whose normalized cost gap exceeds the maximum
    // degree times the subset size. Such entries never arise from real
    // partial solutions, so the answer is unaffected.
    bool truncate_by_degree = false;
    // Assert the structural properties of every stored entry: a zero gap on
    // the empty subset, no negative gaps, and the degree bound above.
    // Violations throw std::logic_error.
    bool check_invariants = false;
};

struct TwSolveStats {
    std::size_t dp_nodes = 0;
    std::size_t max_bag = 0;
    std::size_t max_table_entries = 0;
    std::size_t total_entries = 0;
    std::size_t edges_settled = 0;
    std::size_t truncated_entries = 0;
};

struct TwSolveResult {
    std::int64_t opt = 0;
    VertexSet deletions;
    VertexSet unique_cover;
    std::int64_t cover_size = 0;
};

// Solves over the given decomposition, which is validated first.
TwSolveResult solve_muvc_tw(const Graph& g, const TreeDecomposition& td,
                            const TwSolveOptions& options = {},
                            TwSolveStats* stats = nullptr);

// Convenience overload for forests: synthesizes the width-1 edge-bag
// decomposition internally. Throws GraphError on graphs with cycles.
TwSolveResult solve_muvc_tw(const Graph& g, const TwSolveOptions& options = {},
                            TwSolveStats* stats = nullptr);

}  // namespace muvc
