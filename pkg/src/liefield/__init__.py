"""Exact computations with Lie algebras of exponential-polynomial vector fields."""

from .coeffring import ExpMonomial, ExpPoly, GaussianRational
from .grammar import ParseError, parse_exppoly, parse_field
from .liestruct import Subalgebra, span_closure
from .vfield import VectorField, bracket

__all__ = [
    "ExpMonomial",
    "ExpPoly",
    "GaussianRational",
    "ParseError",
    "Subalgebra",
    "VectorField",
    "bracket",
    "parse_exppoly",
    "parse_field",
    "span_closure",
]

__version__ = "0.1.0"
