"""Exact solvers for the smallest deletion set leaving a unique minimum
vertex cover, plus oracles, verification, and instance generators.

The heavy lifting happens in the compiled ``_core`` extension; this package
re-exports its public names.
"""

from ._core import (
    CwExpression,
    CwSolveResult,
    GadgetGraph,
    Graph,
    GraphError,
    MinVcResult,
    MuvcOracleResult,
    ParseError,
    PauvcOracleResult,
    TreeDecomposition,
    TreeSolveResult,
    TwSolveResult,
    TypedFormula,
    UniquenessResult,
    cw_path_expression,
    cw_tree_expression,
    cw_width,
    delete_vertices,
    edge_bag_decomposition,
    eval_cw_expression,
    format_cw_expression,
    format_formula,
    format_gr,
    format_roles,
    gen_gk,
    gen_hardness_instance,
    gen_random_graph,
    gen_random_tree,
    is_unique_min_vc,
    load_cw_expression,
    load_formula,
    load_gr,
    load_td,
    min_vc,
    parse_cw_expression_text,
    parse_formula_text,
    parse_gr_text,
    parse_td_text,
    solve_muvc_bruteforce,
    solve_muvc_cw,
    solve_muvc_cw_fpt,
    solve_muvc_tree,
    solve_muvc_tw,
    solve_pauvc_bruteforce,
    uq_one_in_three_sat,
)

__version__ = "0.1.0"

__all__ = [
    "CwExpression",
    "CwSolveResult",
    "GadgetGraph",
    "Graph",
    "GraphError",
    "MinVcResult",
    "MuvcOracleResult",
    "ParseError",
    "PauvcOracleResult",
    "TreeDecomposition",
    "TreeSolveResult",
    "TwSolveResult",
    "TypedFormula",
    "UniquenessResult",
    "cw_path_expression",
    "cw_tree_expression",
    "cw_width",
    "delete_vertices",
    "edge_bag_decomposition",
    "eval_cw_expression",
    "format_cw_expression",
    "format_formula",
    "format_gr",
    "format_roles",
    "gen_gk",
    "gen_hardness_instance",
    "gen_random_graph",
    "gen_random_tree",
    "is_unique_min_vc",
    "load_cw_expression",
    "load_formula",
    "load_gr",
    "load_td",
    "min_vc",
    "parse_cw_expression_text",
    "parse_formula_text",
    "parse_gr_text",
    "parse_td_text",
    "solve_muvc_bruteforce",
    "solve_muvc_cw",
    "solve_muvc_cw_fpt",
    "solve_muvc_tree",
    "solve_muvc_tw",
    "solve_pauvc_bruteforce",
    "uq_one_in_three_sat",
]
