#pragma once

// Run reports for the command line tool: one record per solver invocation,
// rendered as line-oriented "key: value" text or as a JSON object carrying
// the same values. Vertex ids are printed 1-based to match the input files.

#include <cstdint>
#include <string>

#include "muvc/graph.hpp"

namespace muvc {

// Every report header names the tie-break rule the solvers implement:
// smaller deletion sets win, ties go to the lexicographically smallest set,
// and within the dynamic programs keeping a vertex is preferred over
// deleting it when both options cost the same.
inline constexpr const char* kTieBreakPolicy = "size-then-lex, prefer-keep";

struct RunReport {
    std::string solver;
    std::string instance;
    std::uint64_t seed = 0;
    // "solved", or "infeasible within k=K" when a budgeted run fails.
    std::string status = "solved";
    bool feasible = true;
    std::int64_t opt = 0;
    VertexSet witness;
    std::string witness_key = "deletions";  // "pinned" for the pinning oracle
    VertexSet cover;
    std::int64_t cover_size = 0;
    double wall_ms = 0.0;
    // "ok", "failed", or "skipped". Set "ok" only by verify_report.
    std::string verification = "skipped";
};

// Re-checks a solve report against the instance: deletes the witness, runs
// the uniqueness check, and demands a unique cover matching the reported
// one with |witness| equal to the reported optimum. Sets verification to
// "ok" or "failed".
void verify_report(const Graph& g, RunReport& r);

std::string render_text(const RunReport& r);
std::string render_json(const RunReport& r);

// "8 9" for {7, 8}; the empty set renders as "-".
std::string format_vertices_1based(const VertexSet& s);

}  // namespace muvc
