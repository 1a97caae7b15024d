"""Multigraded local cohomology and regularity."""

from .grading import Grading, shift_set
from .hilbert import NumericalPolynomial, fit_polynomial, grothendieck_serre_check, ring_closed_form
from .koszul import betti_table, tor_dim, tor_dims
from .linalg import BACKEND, Field
from .local_cohomology import cohomology_table
from .regions import Box, LatticeRegion
from .regularity import (
    reg_lower_bound_from_betti,
    regularity_region,
    tor_bound_from_reg,
    weakly_regular,
)
from .ring import MonomialIdeal, Presentation, free_module, quotient, shift, truncate

__all__ = [
    "BACKEND",
    "Box",
    "Field",
    "Grading",
    "LatticeRegion",
    "MonomialIdeal",
    "NumericalPolynomial",
    "Presentation",
    "betti_table",
    "cohomology_table",
    "fit_polynomial",
    "free_module",
    "grothendieck_serre_check",
    "quotient",
    "reg_lower_bound_from_betti",
    "regularity_region",
    "ring_closed_form",
    "shift",
    "shift_set",
    "tor_bound_from_reg",
    "tor_dim",
    "tor_dims",
    "truncate",
    "weakly_regular",
]
