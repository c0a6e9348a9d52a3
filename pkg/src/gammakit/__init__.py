"""gammakit: exact gamma-positivity tools for permutation statistics.

Polynomial arithmetic (:mod:`exactalg`), truncated EGFs (:mod:`egfseries`),
brute-force statistics (:mod:`permstats`), grammar derivations
(:mod:`grammarcalc`), fast families (:mod:`families`), bijections
(:mod:`bijections`) and the verification runner (:mod:`verify`).
"""

from .exactalg import MultiPoly, parse, render, substitute, variables
from .families import FAMILIES, expand_gamma_basis, f_pm_split, family, gamma_table, gamma_vector

__version__ = "0.1.0"

__all__ = [
    "MultiPoly", "parse", "render", "substitute", "variables",
    "FAMILIES", "family", "gamma_table", "expand_gamma_basis", "f_pm_split", "gamma_vector",
]
