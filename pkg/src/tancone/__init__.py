"""Tangent cones of monomial curves defined by numerical semigroups."""
from .groebner import Budget, BudgetExceeded, GroebnerBasis, groebner, normal_form
from .polyalg import Grading, MonomialOrder, Polynomial, Ring, parse_polynomial
from .semigroup import NumericalSemigroup
from .toric import herzog_data, herzog_generators, toric_ideal
from .tangentcone import ConsistencyError, TangentCone, standard_basis, tangent_cone
from .resolution import BettiTable, gss_betti, minimal_free_resolution
from .families import make_family, validate
from .explorer import shift_scan, verify_conjecture_tilde, verify_conjecture_width

__version__ = "0.1.0"

__all__ = [
    "Budget", "BudgetExceeded", "GroebnerBasis", "groebner", "normal_form",
    "Grading", "MonomialOrder", "Polynomial", "Ring", "parse_polynomial",
    "NumericalSemigroup", "herzog_data", "herzog_generators", "toric_ideal",
    "ConsistencyError", "TangentCone", "standard_basis", "tangent_cone",
    "BettiTable", "gss_betti", "minimal_free_resolution",
    "make_family", "validate",
    "shift_scan", "verify_conjecture_tilde", "verify_conjecture_width",
]
