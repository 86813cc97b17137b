"""Exact exterior algebra, stable forms and torsion analysis on Lie algebras."""

from .exterior import InnerProduct, KForm, Orientation, Vector
from .liealg import LieAlgebra, MetricLieAlgebra, parse_form, parse_structure_equations
from .scalars import Polynomial, Rational

__version__ = "0.1.0"

__all__ = [
    "InnerProduct", "KForm", "Orientation", "Vector",
    "LieAlgebra", "MetricLieAlgebra", "parse_form", "parse_structure_equations",
    "Polynomial", "Rational", "__version__",
]
