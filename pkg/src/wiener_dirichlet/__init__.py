"""Composition operators on the Wiener-Dirichlet algebra.

Certified norms of Dirichlet-series powers, the Bohr lift to the polytorus,
symbol classification (bounded / compact / isometry / automorphism) and
monomial-map analysis on A+(T^k).
"""

from .bohr import bohr_lift, bohr_unlift, line_infimum, torus_minimum, transfer_symbol
from .classify import ClassificationReport, classify, decay_slope, norm_decay_profile
from .dirichlet import CertifiedNorm, DirichletPoly, UnconvergedError, dirichlet_mul, n_power_expand, wiener_norm
from .hermite import HermiteParams, lower_bound19, newman_boundary_analysis, norm_via_hermite
from .multipoly import MultiPoly
from .polytorus import (ComponentMap, MonomialMap, automorphism_check_Tk, blaschke_power_norm, compose,
                        isometry_check_Tk, lemma19_witness)
from .symbol import Symbol, SymbolParseError, format_symbol, parse_symbol

__version__ = "0.1.0"

__all__ = [
    "CertifiedNorm", "ClassificationReport", "ComponentMap", "DirichletPoly", "HermiteParams", "MonomialMap",
    "MultiPoly", "Symbol", "SymbolParseError", "UnconvergedError", "automorphism_check_Tk", "blaschke_power_norm",
    "bohr_lift", "bohr_unlift", "classify", "compose", "decay_slope", "dirichlet_mul", "format_symbol",
    "isometry_check_Tk", "lemma19_witness", "line_infimum", "lower_bound19", "n_power_expand",
    "newman_boundary_analysis", "norm_decay_profile", "norm_via_hermite", "parse_symbol", "torus_minimum",
    "transfer_symbol", "wiener_norm",
]
