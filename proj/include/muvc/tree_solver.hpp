#pragma once

// Linear-time solver for the smallest deletion set whose removal leaves a
// forest with exactly one minimum vertex cover. Works bottom-up over each
// rooted component with constant-size state tables, so paths with millions
// of vertices stay cheap.

#include <cstddef>
#include <cstdint>

#include "muvc/graph.hpp"

namespace muvc {

struct TreeSolveOptions {
    // Components are distributed over this many worker threads when > 1.
    int threads = 1;
    // Re-runs the dynamic program with exact (uncapped) difference tables
    // and verifies that collapsing them reproduces the compact tables at
    // every node. Throws std::logic_error on any mismatch.
    bool cross_check = false;
};

struct TreeSolveStats {
    std::size_t dp_nodes = 0;
    // Largest number of simultaneously realized state slots at any node.
    // The compact state space has twelve slots, so this never exceeds 12.
    std::size_t max_state_slots = 0;
    bool cross_checked = false;
};

struct TreeSolveResult {
    std::int64_t opt = 0;
    VertexSet deletions;
    // The one minimum vertex cover of g minus the deletions.
    VertexSet unique_cover;
    std::int64_t cover_size = 0;
    // Minimum vertex cover size of the input itself, for reporting.
    std::int64_t mvc_size = 0;
};

// Throws GraphError unless g is a forest.
TreeSolveResult solve_muvc_tree(const Graph& g, const TreeSolveOptions& options = {},
                                TreeSolveStats* stats = nullptr);

}  // namespace muvc
