"""Skein algebras of planar ribbon graphs and their Temperley-Lieb cabling."""
from .cabling import evaluate_closed, kink_factor, phi, spin_network_theta
from .diagram import DiagramError, GraphDiagram, NormalForm, TangleBuilder, parse_diagram, serialize_diagram, stack
from .ring import A, D, D_INV, LaurentPolynomial, RingElement
from .skein import RULES, RewriteRules, YElement, reduce, structure_constants, y_basis, y_mul
from .tl import Matching, TLElement, jones_wenzl, markov_trace, tl_basis, tl_mul

__version__ = "0.1.0"

__all__ = [
    "A", "D", "D_INV", "LaurentPolynomial", "RingElement",
    "Matching", "TLElement", "tl_basis", "tl_mul", "jones_wenzl", "markov_trace",
    "DiagramError", "GraphDiagram", "NormalForm", "TangleBuilder", "parse_diagram", "serialize_diagram", "stack",
    "RULES", "RewriteRules", "YElement", "reduce", "y_basis", "y_mul", "structure_constants",
    "phi", "evaluate_closed", "kink_factor", "spin_network_theta",
]
