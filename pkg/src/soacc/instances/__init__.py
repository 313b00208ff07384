"""Concrete fibred SOACCs: Temperley-Lieb, the toy enlargement and MatPoly."""

from .corrupted import CorruptedTL
from .matpoly import MatPolyMorphism, MatPolySoacc, matpoly_instance
from .tl import (
    BoundaryMismatch, PlanarMatching, TemperleyLieb, all_diagrams, cap_diagram, catalan, cup_diagram,
    e_generator, identity_diagram, tl_cell_factorization, tl_compose,
)
from .toy import STAR_OBJECT, ToyArrow, ToyCellularAlgebra, ToySoacc, toy_instance

__all__ = [
    "CorruptedTL", "MatPolyMorphism", "MatPolySoacc", "matpoly_instance",
    "BoundaryMismatch", "PlanarMatching", "TemperleyLieb", "all_diagrams", "cap_diagram", "catalan",
    "cup_diagram", "e_generator", "identity_diagram", "tl_cell_factorization", "tl_compose",
    "STAR_OBJECT", "ToyArrow", "ToyCellularAlgebra", "ToySoacc", "toy_instance",
]
