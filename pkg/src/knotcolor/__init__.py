"""Colorings of knot diagrams by linear Alexander quandles.

The main entry points are re-exported here; see the submodules for the rest.
"""

from .alexander import alexander_matrix, alexander_polynomial, integer_roots, m_determinant
from .auto import AffineMap, orbit_classes, orbit_report, verify_free_action
from .bounds import combined_lower_bound, log_lower_bound, needs_four, obstruction_set
from .coloring import (
    Coloring,
    ColoringParams,
    count_colorings,
    enumerate_colorings,
    integral_colorings,
    kh_check,
    validate_coloring,
)
from .diagram import KnotDiagram, parse_pd
from .errors import KnotColorError
from .knotdb import load_file, lookup
from .laurent import LaurentPoly
from .moves import MoveSite, SearchBudget, apply_move, canonical_form, enumerate_sites, minimize_colors
from .palette import palette_graph_of_coloring, spanning_forest, verify_det_lemma

__all__ = [
    "AffineMap",
    "Coloring",
    "ColoringParams",
    "KnotColorError",
    "KnotDiagram",
    "LaurentPoly",
    "MoveSite",
    "SearchBudget",
    "alexander_matrix",
    "alexander_polynomial",
    "apply_move",
    "canonical_form",
    "combined_lower_bound",
    "count_colorings",
    "enumerate_colorings",
    "enumerate_sites",
    "integer_roots",
    "integral_colorings",
    "kh_check",
    "load_file",
    "log_lower_bound",
    "lookup",
    "m_determinant",
    "minimize_colors",
    "needs_four",
    "obstruction_set",
    "orbit_classes",
    "orbit_report",
    "palette_graph_of_coloring",
    "parse_pd",
    "spanning_forest",
    "validate_coloring",
    "verify_det_lemma",
    "verify_free_action",
]
