// Python bindings for the solver library. The surface mirrors the C++ API:
// graphs, the three solvers, both brute-force oracles, uniqueness
// verification, and the instance generators. Vertex ids stay 0-based here;
// only the file formats and the command line tool use 1-based ids.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "muvc/cw_expression.hpp"
#include "muvc/cw_solver.hpp"
#include "muvc/generators.hpp"
#include "muvc/graph.hpp"
#include "muvc/min_vc.hpp"
#include "muvc/oracle.hpp"
#include "muvc/tree_decomposition.hpp"
#include "muvc/tree_solver.hpp"
#include "muvc/tw_solver.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact solvers for the smallest deletion set leaving a unique "
              "minimum vertex cover";

    py::register_exception<muvc::GraphError>(m, "GraphError", PyExc_ValueError);
    py::register_exception<muvc::ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<muvc::Graph>(m, "Graph")
        .def(py::init<muvc::Vertex>(), py::arg("n") = 0)
        .def("add_edge", &muvc::Graph::add_edge)
        .def("vertex_count", &muvc::Graph::vertex_count)
        .def("edge_count", &muvc::Graph::edge_count)
        .def("has_edge", &muvc::Graph::has_edge)
        .def("degree", &muvc::Graph::degree)
        .def("max_degree", &muvc::Graph::max_degree)
        .def("neighbors", &muvc::Graph::neighbors)
        .def("edges", &muvc::Graph::edges)
        .def("__repr__", [](const muvc::Graph& g) {
            return "Graph(n=" + std::to_string(g.vertex_count()) +
                   ", m=" + std::to_string(g.edge_count()) + ")";
        });

    m.def("parse_gr_text", &muvc::parse_gr_text, py::arg("text"),
          py::arg("source") = "<gr>");
    m.def("load_gr", &muvc::load_gr);
    m.def("format_gr", &muvc::format_gr);

    py::class_<muvc::MinVcResult>(m, "MinVcResult")
        .def_readonly("size", &muvc::MinVcResult::size)
        .def_readonly("cover", &muvc::MinVcResult::cover);
    m.def("min_vc", &muvc::min_vc, py::arg("g"),
          py::arg("forbidden") = muvc::VertexSet{});

    py::class_<muvc::UniquenessResult>(m, "UniquenessResult")
        .def_readonly("unique", &muvc::UniquenessResult::unique)
        .def_readonly("cover", &muvc::UniquenessResult::cover);
    m.def("is_unique_min_vc", &muvc::is_unique_min_vc);
    m.def("delete_vertices", [](const muvc::Graph& g, const muvc::VertexSet& s) {
        return muvc::delete_vertices(g, s).graph;
    });

    py::class_<muvc::TreeSolveResult>(m, "TreeSolveResult")
        .def_readonly("opt", &muvc::TreeSolveResult::opt)
        .def_readonly("deletions", &muvc::TreeSolveResult::deletions)
        .def_readonly("unique_cover", &muvc::TreeSolveResult::unique_cover)
        .def_readonly("cover_size", &muvc::TreeSolveResult::cover_size)
        .def_readonly("mvc_size", &muvc::TreeSolveResult::mvc_size);
    m.def(
        "solve_muvc_tree",
        [](const muvc::Graph& g, int threads) {
            muvc::TreeSolveOptions options;
            options.threads = threads;
            return muvc::solve_muvc_tree(g, options);
        },
        py::arg("g"), py::arg("threads") = 1);

    py::class_<muvc::TreeDecomposition>(m, "TreeDecomposition");
    m.def("load_td", &muvc::load_td);
    m.def("parse_td_text", &muvc::parse_td_text, py::arg("text"),
          py::arg("source") = "<td>");
    m.def("edge_bag_decomposition", &muvc::edge_bag_decomposition);

    py::class_<muvc::TwSolveResult>(m, "TwSolveResult")
        .def_readonly("opt", &muvc::TwSolveResult::opt)
        .def_readonly("deletions", &muvc::TwSolveResult::deletions)
        .def_readonly("unique_cover", &muvc::TwSolveResult::unique_cover)
        .def_readonly("cover_size", &muvc::TwSolveResult::cover_size);
    m.def(
        "solve_muvc_tw",
        [](const muvc::Graph& g, const muvc::TreeDecomposition* td,
           bool truncate_by_degree) {
            muvc::TwSolveOptions options;
            options.truncate_by_degree = truncate_by_degree;
            if (td == nullptr) {
                return muvc::solve_muvc_tw(g, options);
            }
            return muvc::solve_muvc_tw(g, *td, options);
        },
        py::arg("g"), py::arg("td") = nullptr,
        py::arg("truncate_by_degree") = false);

    py::class_<muvc::CwExpression>(m, "CwExpression");
    m.def("parse_cw_expression_text", &muvc::parse_cw_expression_text,
          py::arg("text"), py::arg("source") = "<cw>");
    m.def("load_cw_expression", &muvc::load_cw_expression);
    m.def("format_cw_expression", &muvc::format_cw_expression);
    m.def("cw_width", &muvc::cw_width);
    m.def("cw_path_expression", &muvc::cw_path_expression);
    m.def("cw_tree_expression", &muvc::cw_tree_expression);
    m.def("eval_cw_expression", [](const muvc::CwExpression& e) {
        return muvc::eval_cw_expression(e).graph;
    });

    py::class_<muvc::CwSolveResult>(m, "CwSolveResult")
        .def_readonly("feasible", &muvc::CwSolveResult::feasible)
        .def_readonly("opt", &muvc::CwSolveResult::opt)
        .def_readonly("deletions", &muvc::CwSolveResult::deletions)
        .def_readonly("unique_cover", &muvc::CwSolveResult::unique_cover)
        .def_readonly("cover_size", &muvc::CwSolveResult::cover_size);
    m.def(
        "solve_muvc_cw",
        [](const muvc::CwExpression& e) { return muvc::solve_muvc_cw(e); },
        py::arg("e"));
    m.def(
        "solve_muvc_cw_fpt",
        [](const muvc::CwExpression& e, std::int64_t k) {
            return muvc::solve_muvc_cw_fpt(e, k);
        },
        py::arg("e"), py::arg("k"));

    py::class_<muvc::MuvcOracleResult>(m, "MuvcOracleResult")
        .def_readonly("feasible", &muvc::MuvcOracleResult::feasible)
        .def_readonly("opt", &muvc::MuvcOracleResult::opt)
        .def_readonly("deletions", &muvc::MuvcOracleResult::deletions)
        .def_readonly("unique_cover", &muvc::MuvcOracleResult::unique_cover);
    m.def("solve_muvc_bruteforce", &muvc::solve_muvc_bruteforce, py::arg("g"),
          py::arg("k_max") = std::nullopt);

    py::class_<muvc::PauvcOracleResult>(m, "PauvcOracleResult")
        .def_readonly("feasible", &muvc::PauvcOracleResult::feasible)
        .def_readonly("opt", &muvc::PauvcOracleResult::opt)
        .def_readonly("pinned", &muvc::PauvcOracleResult::pinned)
        .def_readonly("cover", &muvc::PauvcOracleResult::cover);
    m.def("solve_pauvc_bruteforce", &muvc::solve_pauvc_bruteforce);

    m.def("gen_gk", &muvc::gen_gk);
    m.def("gen_random_tree", &muvc::gen_random_tree, py::arg("n"),
          py::arg("seed"));
    m.def("gen_random_graph", &muvc::gen_random_graph, py::arg("n"), py::arg("p"),
          py::arg("seed"));

    py::class_<muvc::TypedFormula>(m, "TypedFormula")
        .def_readonly("x_count", &muvc::TypedFormula::x_count)
        .def_readonly("y_count", &muvc::TypedFormula::y_count);
    m.def("parse_formula_text", &muvc::parse_formula_text, py::arg("text"),
          py::arg("source") = "<formula>");
    m.def("load_formula", &muvc::load_formula);
    m.def("format_formula", &muvc::format_formula);
    m.def("uq_one_in_three_sat", &muvc::uq_one_in_three_sat);

    py::class_<muvc::GadgetGraph>(m, "GadgetGraph")
        .def_readonly("graph", &muvc::GadgetGraph::graph)
        .def_readonly("role", &muvc::GadgetGraph::role);
    m.def(
        "gen_hardness_instance",
        [](const muvc::TypedFormula& f) { return muvc::gen_hardness_instance(f); },
        py::arg("f"));
    m.def("format_roles", &muvc::format_roles);
}
