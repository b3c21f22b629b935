#include "muvc/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "muvc/min_vc.hpp"

namespace muvc {
namespace {

double round_ms(double ms) { return std::round(ms * 1000.0) / 1000.0; }

std::string format_ms(double ms) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", round_ms(ms));
    return buf;
}

std::vector<std::int64_t> ids_1based(const VertexSet& s) {
    std::vector<std::int64_t> out;
    out.reserve(s.size());
    for (Vertex v : s) {
        out.push_back(static_cast<std::int64_t>(v) + 1);
    }
    return out;
}

}  // namespace

void verify_report(const Graph& g, RunReport& r) {
    const InducedSubgraph sub = delete_vertices(g, r.witness);
    const UniquenessResult check = is_unique_min_vc(sub.graph);
    VertexSet mapped;
    mapped.reserve(check.cover.size());
    for (Vertex v : check.cover) {
        mapped.push_back(sub.to_original[static_cast<std::size_t>(v)]);
    }
    std::sort(mapped.begin(), mapped.end());
    const bool ok = check.unique &&
                    static_cast<std::int64_t>(r.witness.size()) == r.opt &&
                    mapped == r.cover &&
                    static_cast<std::int64_t>(mapped.size()) == r.cover_size;
    r.verification = ok ? "ok" : "failed";
}

std::string format_vertices_1based(const VertexSet& s) {
    if (s.empty()) {
        return "-";
    }
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i > 0) {
            out += ' ';
        }
        out += std::to_string(static_cast<std::int64_t>(s[i]) + 1);
    }
    return out;
}

std::string render_text(const RunReport& r) {
    std::string out;
    out += "seed: " + std::to_string(r.seed) + "\n";
    out += "tie-break: " + std::string(kTieBreakPolicy) + "\n";
    out += "solver: " + r.solver + "\n";
    out += "instance: " + r.instance + "\n";
    out += "status: " + r.status + "\n";
    if (r.feasible) {
        out += "opt: " + std::to_string(r.opt) + "\n";
        out += r.witness_key + ": " + format_vertices_1based(r.witness) + "\n";
        out += "cover: " + format_vertices_1based(r.cover) + "\n";
        out += "cover-size: " + std::to_string(r.cover_size) + "\n";
    }
    out += "time-ms: " + format_ms(r.wall_ms) + "\n";
    out += "verification: " + r.verification + "\n";
    return out;
}

std::string render_json(const RunReport& r) {
    nlohmann::json j;
    j["seed"] = r.seed;
    j["tie-break"] = kTieBreakPolicy;
    j["solver"] = r.solver;
    j["instance"] = r.instance;
    j["status"] = r.status;
    if (r.feasible) {
        j["opt"] = r.opt;
        j[r.witness_key] = ids_1based(r.witness);
        j["cover"] = ids_1based(r.cover);
        j["cover-size"] = r.cover_size;
    }
    j["time-ms"] = round_ms(r.wall_ms);
    j["verification"] = r.verification;
    return j.dump(2) + "\n";
}

}  // namespace muvc
