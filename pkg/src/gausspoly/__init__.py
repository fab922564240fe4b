"""Polynomial invariants of virtual knots, long flat knots and two-component links.

Diagrams are Gauss codes such as ``"knot: O1+ O2+ U1+ U2+"``; see
:func:`gausspoly.diagram.parse` for the grammar.
"""
from .diagram import (
    FlatLongDiagram,
    KnotGaussDiagram,
    LinkGaussDiagram,
    LongGaussDiagram,
    canonical,
    parse,
    serialize,
)
from .errors import GaussError
from .fuzz import FuzzReport, run_fuzz
from .knot_invariants import affine_index_poly, f_poly, scalar_invariants, writhe_poly
from .laurent import LaurentPoly
from .link_invariants import fg_polys, link_scalars, linking_poly
from .longflat import flat_writhe_poly

__version__ = "0.1.0"

__all__ = [
    "FlatLongDiagram",
    "FuzzReport",
    "GaussError",
    "KnotGaussDiagram",
    "LaurentPoly",
    "LinkGaussDiagram",
    "LongGaussDiagram",
    "affine_index_poly",
    "canonical",
    "f_poly",
    "fg_polys",
    "flat_writhe_poly",
    "link_scalars",
    "linking_poly",
    "parse",
    "run_fuzz",
    "scalar_invariants",
    "serialize",
    "writhe_poly",
]
