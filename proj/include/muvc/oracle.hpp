#pragma once

// Reference solvers that settle small instances by direct enumeration.
// They are deliberately simple: the structured solvers are validated against
// these, so nothing here may share machinery with them beyond the branch and
// bound cover search.

#include <cstdint>
#include <optional>
#include <vector>

#include "muvc/graph.hpp"

namespace muvc {

// Every minimum vertex cover of g, each sorted, in lexicographic order.
// Guarded to small graphs since the list can be exponential.
std::vector<VertexSet> enumerate_min_vcs(const Graph& g);

struct MuvcOracleResult {
    bool feasible = false;
    std::int64_t opt = 0;
    VertexSet deletions;
    // The one minimum cover of the residual graph, in original vertex ids.
    VertexSet unique_cover;
};

// Smallest deletion set S such that g - S has exactly one minimum vertex
// cover, found by scanning candidate sets by size then lexicographically.
// With k_max set, only sets up to that size are tried and feasible reports
// whether one was found; without it the scan runs to completion.
MuvcOracleResult solve_muvc_bruteforce(const Graph& g,
                                       std::optional<int> k_max = std::nullopt);

struct PauvcOracleResult {
    bool feasible = false;
    std::int64_t opt = 0;
    VertexSet pinned;
    // The one minimum cover containing the pinned set.
    VertexSet cover;
};

// Smallest vertex set contained in exactly one minimum vertex cover of g,
// scanned by size then lexicographically over subsets of the cover union.
PauvcOracleResult solve_pauvc_bruteforce(const Graph& g);

}  // namespace muvc
