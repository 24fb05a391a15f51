"""Finite monoids, their left-coset orders ``X(M)``, and the linearity criterion."""
from .errors import BudgetExceeded, NotAssociative
from .kernels import BACKEND
from .monoid import (FiniteMonoid, CosetPoset, closure_from_transformations, coset_poset, is_almost_r_trivial,
                     is_j_trivial, is_r_trivial, is_xm_linear, left_coset, monoid_from_cayley, monoid_of_functions,
                     r_classes, xm_witness)
from .posets import FiniteLattice, FinitePoset, enumerate_posets, is_lattice, poset_from_covers
from .transform import Transformation

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BudgetExceeded", "CosetPoset", "FiniteLattice", "FiniteMonoid", "FinitePoset",
    "NotAssociative", "Transformation", "closure_from_transformations", "coset_poset", "enumerate_posets",
    "is_almost_r_trivial", "is_j_trivial", "is_lattice", "is_r_trivial", "is_xm_linear", "left_coset",
    "monoid_from_cayley", "monoid_of_functions", "poset_from_covers", "r_classes", "xm_witness",
]
