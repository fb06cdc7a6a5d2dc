"""Thom polynomials of equioriented type A quiver orbits.

The main entry points are :func:`component_polynomial` (sum of Schubert
products over minimal lace diagrams), :func:`verify_thom` and
:func:`solve_thom_linear` (the restriction-equation characterisation),
:func:`quiver_coefficients` and :func:`k_class`.
"""

from .lace import (
    LaceDiagram,
    RankConditions,
    add_strands,
    all_orbits,
    closure_leq,
    codim,
    enumerate_kms,
    enumerate_minimal,
    leftmost,
    rank_conditions,
)
from .permkit import Permutation, bruhat_leq
from .polyring import BETA, Poly, chern, strand
from .quiver import (
    QuiverExpansion,
    component_polynomial,
    distinguished_lambda,
    euler_class,
    k_class,
    phi,
    quiver_coefficients,
    solve_thom_linear,
    verify_thom,
)
from .schubert import grothendieck, schubert, stanley

__version__ = "0.1.0"

__all__ = [
    "LaceDiagram",
    "RankConditions",
    "add_strands",
    "all_orbits",
    "closure_leq",
    "codim",
    "enumerate_kms",
    "enumerate_minimal",
    "leftmost",
    "rank_conditions",
    "Permutation",
    "bruhat_leq",
    "BETA",
    "Poly",
    "chern",
    "strand",
    "QuiverExpansion",
    "component_polynomial",
    "distinguished_lambda",
    "euler_class",
    "k_class",
    "phi",
    "quiver_coefficients",
    "solve_thom_linear",
    "verify_thom",
    "grothendieck",
    "schubert",
    "stanley",
]
