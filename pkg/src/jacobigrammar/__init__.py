"""Grammar derivations for the Dumont differential system on Jacobi elliptic functions.

Submodules: ``exactpoly`` (sparse integer polynomials), ``grammar`` (formal
derivatives), ``triangles`` (the seven coefficient arrays), ``permstats``
(brute-force statistics), ``series`` (exact sn/cn/dn expansions),
``numcheck`` (floating-point closed-form checks), ``identities`` (exact
theorem checks) and ``cli``.
"""
from .exactpoly import Poly, VariableSet, parse, to_text
from .grammar import Grammar, OperatorSpec, derive, iterate, iterate_all
from .report import VerificationReport
from .triangles import Triangle, extract, get_triangle, recur

__version__ = "0.1.0"

__all__ = [
    "Poly",
    "VariableSet",
    "parse",
    "to_text",
    "Grammar",
    "OperatorSpec",
    "derive",
    "iterate",
    "iterate_all",
    "Triangle",
    "extract",
    "recur",
    "get_triangle",
    "VerificationReport",
]
