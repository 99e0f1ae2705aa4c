"""Sharp Bohr and Bohr-Rogosinski radii for the harmonic class P0_H(M)."""

from .specfun import DomainError, li2
from .series import M_SUP, area_majorant, boundary_distance, growth_majorant
from .functionals import FunctionalId, ParamSet, phi_main, phi_star, corollary_lhs
from .radius import RootResult, radius_for, solve

__all__ = [
    "DomainError", "li2", "M_SUP", "area_majorant", "boundary_distance",
    "growth_majorant", "FunctionalId", "ParamSet", "phi_main", "phi_star",
    "corollary_lhs", "RootResult", "radius_for", "solve",
]

__version__ = "0.1.0"
