"""Groebner bases for Boolean polynomials on ZDDs, standard bases over
Z/m, and polynomial encodings of circuit-verification and SAT problems."""

from .boolgb import (
    SymCache,
    Strategy,
    bgb_single,
    buchberger,
    factor_linear_leads,
    greedy_nf,
    sat_check,
)
from .boolpoly import (
    BoolMonomial,
    BoolPoly,
    BoolRing,
    Ordering,
    parse_ordering,
)
from .interp import (
    PartialFn,
    PointSet,
    interpolate_simple,
    interpolate_smallest_lex,
    nf_by_interpolate,
    points_gb,
    standard_monomials,
    zeros,
)
from .ringstd import Modulus, RingOrdering, RingStrategy, ZmPoly, ZmRing, std_basis
from .zdd import ZddManager

__all__ = [
    "BoolMonomial",
    "BoolPoly",
    "BoolRing",
    "Modulus",
    "Ordering",
    "PartialFn",
    "PointSet",
    "RingOrdering",
    "RingStrategy",
    "Strategy",
    "SymCache",
    "ZddManager",
    "ZmPoly",
    "ZmRing",
    "bgb_single",
    "buchberger",
    "factor_linear_leads",
    "greedy_nf",
    "interpolate_simple",
    "interpolate_smallest_lex",
    "nf_by_interpolate",
    "parse_ordering",
    "points_gb",
    "sat_check",
    "standard_monomials",
    "std_basis",
    "zeros",
]

__version__ = "0.1.0"
