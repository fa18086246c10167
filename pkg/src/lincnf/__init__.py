"""Structural analysis and exact satisfiability for linear CNF formulas."""

from .classifier import ClassReport, classify
from .dimacs import parse_dimacs, read_dimacs, write_dimacs
from .formula import (
    Assignment,
    Clause,
    Formula,
    FormulaStats,
    Literal,
    build_formula,
    occurrence,
    shared_variables,
    stats,
)
from .xsat import (
    Method,
    Status,
    XsatResult,
    brute_force_xsat,
    candidate_count,
    check_xsat,
    weight_restricted_xsat,
)

__all__ = [
    "Assignment", "ClassReport", "Clause", "Formula", "FormulaStats", "Literal", "Method",
    "Status", "XsatResult", "brute_force_xsat", "build_formula", "candidate_count",
    "check_xsat", "classify", "occurrence", "parse_dimacs", "read_dimacs", "shared_variables",
    "stats", "weight_restricted_xsat", "write_dimacs",
]
__version__ = "0.1.0"
