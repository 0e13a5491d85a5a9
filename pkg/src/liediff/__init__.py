"""Exact derivations, differential operators and Chevalley-Eilenberg calculus
for finite-dimensional Lie and Z2-graded Lie algebras given by structure constants."""

from .algebra import (BUILTIN_NAMES, ParseError, StructureTable, TableError, ad_basis, ad_matrix, builtin, car,
                      ccr, center, emit_table, multiply, parse_table, validate)
from .cohomology import (build_context, coboundary, coboundary_matrix, cohomology_dim, cohomology_report,
                         graded_delta0, graded_delta1)
from .derivations import derivation_algebra, family_containment, inner_derivations, is_derivation, outer_report
from .diffops import Filtration, diff_ops, filtration_report, zero_order_ops
from .linalg import Rational, RationalMatrix, Subspace, nullspace, rank
from .modules import Representation, first_order_module_ops, gl_defining, zero_order_module_ops
from .operators import LinearOperator, OperatorSpace

__version__ = "0.1.0"

__all__ = [
    "BUILTIN_NAMES", "ParseError", "StructureTable", "TableError", "ad_basis", "ad_matrix", "builtin", "car",
    "ccr", "center", "emit_table", "multiply", "parse_table", "validate",
    "build_context", "coboundary", "coboundary_matrix", "cohomology_dim", "cohomology_report",
    "graded_delta0", "graded_delta1",
    "derivation_algebra", "family_containment", "inner_derivations", "is_derivation", "outer_report",
    "Filtration", "diff_ops", "filtration_report", "zero_order_ops",
    "Rational", "RationalMatrix", "Subspace", "nullspace", "rank",
    "Representation", "first_order_module_ops", "gl_defining", "zero_order_module_ops",
    "LinearOperator", "OperatorSpace",
]
