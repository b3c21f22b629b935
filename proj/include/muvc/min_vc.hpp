#pragma once

#include "muvc/graph.hpp"

namespace muvc {

// Raised when a forbidden set leaves some edge with no admissible endpoint.
class UncoverableError : public GraphError {
public:
    using GraphError::GraphError;
};

struct MinVcResult {
    std::int64_t size = 0;
    VertexSet cover;
};

// Exact minimum vertex cover avoiding the forbidden vertices, by branch and
// bound: forced neighbors of forbidden vertices, pendant and isolated-vertex
// reductions, closed forms once every surviving degree is at most two, and a
// greedy-matching lower bound at each branch. Deterministic: the witness is
// the first optimum in the fixed search order. Throws UncoverableError when
// an edge has both endpoints forbidden.
MinVcResult min_vc(const Graph& g, const VertexSet& forbidden = {});
std::int64_t min_vc_size(const Graph& g, const VertexSet& forbidden = {});

struct UniquenessResult {
    bool unique = false;
    VertexSet cover;  // a minimum cover; the unique one when unique is true
};

// A minimum cover M is unique iff forbidding any single member strictly
// increases the optimum, so this costs at most |M| + 1 solver calls.
// The empty graph counts as uniquely covered by the empty set.
UniquenessResult is_unique_min_vc(const Graph& g);

}  // namespace muvc
