#pragma once

// Solver for the smallest deletion set leaving a unique minimum vertex
// cover, driven by a clique-width expression of the graph. Each DP entry is
// a characteristic: for every label subset I, the size of the smallest
// cover of the evaluated subgraph minus the deletions that contains every
// kept vertex whose label lies in I, plus a capped count of such covers.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "muvc/cw_expression.hpp"
#include "muvc/graph.hpp"

namespace muvc {

struct CwChar {
    std::vector<std::int32_t> alpha;  // indexed by label subset bitmask
    std::vector<std::uint8_t> beta;   // cover multiplicity capped at 2
};

// Transition functions, exposed so each branch can be pinned by tests.
CwChar cw_singleton_kept(int width, int label);
CwChar cw_singleton_deleted(int width);
CwChar cw_apply_connect(const CwChar& chr, int i, int j);
CwChar cw_apply_relabel(const CwChar& chr, int i, int j);
CwChar cw_combine_union(const CwChar& a, const CwChar& b);

// First-pass characteristics with nothing deleted, one per expression node
// in node order.
std::vector<CwChar> empty_set_characteristics(const CwExpression& e);

struct CwTableEntry {
    CwChar chr;
    std::int64_t size = 0;  // vertices deleted to reach this characteristic
};

// The root table of the full dynamic program: every reachable
// characteristic with the fewest deletions achieving it, in key order.
std::vector<CwTableEntry> cw_dp(const CwExpression& e);

struct CwSolveOptions {
    // Assert per-entry structural properties: monotone alpha, deletion-set
    // bounded gaps against the first pass, and the absent-label rule.
    // Violations throw std::logic_error.
    bool check_invariants = false;
};

struct CwSolveStats {
    std::size_t dp_nodes = 0;
    int width = 0;
    std::size_t max_table_entries = 0;
    std::size_t total_entries = 0;
    std::size_t pruned_entries = 0;  // budget mode only
};

struct CwSolveResult {
    bool feasible = true;  // false only in budget mode
    std::int64_t opt = 0;
    VertexSet deletions;
    VertexSet unique_cover;
    std::int64_t cover_size = 0;
};

// Full solve over all deletion sizes.
CwSolveResult solve_muvc_cw(const CwExpression& e,
                            const CwSolveOptions& options = {},
                            CwSolveStats* stats = nullptr);

// Budgeted two-pass variant: tables are keyed by the per-subset gaps to the
// first-pass characteristics and entries with a gap above k are dropped.
// Returns feasible=false when no deletion set of size at most k works.
CwSolveResult solve_muvc_cw_fpt(const CwExpression& e, std::int64_t k,
                                const CwSolveOptions& options = {},
                                CwSolveStats* stats = nullptr);

}  // namespace muvc
