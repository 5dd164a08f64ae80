"""Exact tautological-class invariants of matroids via torus localization."""

__version__ = "1.0.0"

from .genperm import GenPermutohedron, base_polytope, simplex
from .matroid import (
    FlagMatroid,
    Matroid,
    graphic,
    higgs_lift,
    matroid_from_bases,
    uniform,
)
from .poly import SparsePoly, interpolate_univariate, logconcave_unbroken_check, psi_transform
from .tutte import beta_pair, t_transform, tutte_delcontr
from .weights import MinkowskiWeight, mw_balance_check

__all__ = [
    "FlagMatroid",
    "GenPermutohedron",
    "Matroid",
    "MinkowskiWeight",
    "SparsePoly",
    "base_polytope",
    "beta_pair",
    "graphic",
    "higgs_lift",
    "interpolate_univariate",
    "logconcave_unbroken_check",
    "matroid_from_bases",
    "mw_balance_check",
    "psi_transform",
    "simplex",
    "t_transform",
    "tutte_delcontr",
    "uniform",
]
