"""Truncated exponential power series with exact polynomial coefficients.

A series stores ``coeffs[m] = m! * [u^m] f``, i.e. the EGF numerators, so
products are binomial convolutions and everything stays integral. This
covers sn, cn, dn (classical and two-parameter), the coefficient
polynomials J_n(k^2), and the exact check of Dumont's generating function.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .exactpoly import Poly, RingMismatchError, VariableSet
from .grammar import OperatorSpec, iterate_all, schett
from .report import VerificationReport

TWO_PARAM_RING = VariableSet(("a2", "b2"))
CLASSICAL_RING = VariableSet(("k2",))


class SeriesError(ArithmeticError):
    pass


@dataclass(frozen=True)
class FormalPowerSeries:
    """EGF truncated at ``order``: ``f = sum coeffs[m] u^m / m!``."""

    ring: VariableSet
    coeffs: Tuple[Poly, ...]
    variable: str = "u"

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_coeffs(cls, ring, coeffs: Sequence, order: int, variable: str = "u"):
        ring = ring if isinstance(ring, VariableSet) else VariableSet(ring)
        out = []
        for m in range(order + 1):
            c = coeffs[m] if m < len(coeffs) else 0
            out.append(c if isinstance(c, Poly) else Poly.constant(ring, c))
        return cls(ring, tuple(out), variable)

    @classmethod
    def constant(cls, ring, c, order: int):
        return cls.from_coeffs(ring, [c], order)

    @classmethod
    def monomial(cls, ring, m: int, order: int):
        """The series u^m (stored as the EGF numerator m!)."""
        coeffs = [0] * (order + 1)
        if m <= order:
            coeffs[m] = factorial(m)
        return cls.from_coeffs(ring, coeffs, order)

    def __getitem__(self, m: int) -> Poly:
        return self.coeffs[m]

    def _check(self, other: "FormalPowerSeries"):
        if self.ring != other.ring or self.variable != other.variable:
            raise RingMismatchError("series over different rings")

    def _order_with(self, other):
        return min(self.order, other.order)

    def __add__(self, other):
        if not isinstance(other, FormalPowerSeries):
            other = FormalPowerSeries.constant(self.ring, other, self.order)
        self._check(other)
        n = self._order_with(other)
        return FormalPowerSeries(self.ring, tuple(self.coeffs[m] + other.coeffs[m] for m in range(n + 1)), self.variable)

    __radd__ = __add__

    def __neg__(self):
        return FormalPowerSeries(self.ring, tuple(-c for c in self.coeffs), self.variable)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "FormalPowerSeries":
        """Multiply every coefficient by a polynomial or integer."""
        if isinstance(c, Poly) and c.ring != self.ring:
            raise RingMismatchError("scalar lives in a different ring")
        return FormalPowerSeries(self.ring, tuple(x * c for x in self.coeffs), self.variable)

    def __mul__(self, other):
        if not isinstance(other, FormalPowerSeries):
            return self.scale(other)
        self._check(other)
        n = self._order_with(other)
        out = []
        for m in range(n + 1):
            acc = Poly(self.ring)
            for k in range(m + 1):
                a, b = self.coeffs[k], other.coeffs[m - k]
                if a and b:
                    acc = acc + a * b * comb(m, k)
            out.append(acc)
        return FormalPowerSeries(self.ring, tuple(out), self.variable)

    __rmul__ = __mul__

    def reciprocal(self) -> "FormalPowerSeries":
        """1/f for f with constant term exactly 1."""
        if self.coeffs[0] != Poly.constant(self.ring, 1):
            raise SeriesError("reciprocal needs constant term 1")
        h = [Poly.constant(self.ring, 1)]
        for m in range(1, self.order + 1):
            acc = Poly(self.ring)
            for k in range(1, m + 1):
                if self.coeffs[k]:
                    acc = acc + self.coeffs[k] * h[m - k] * comb(m, k)
            h.append(-acc)
        return FormalPowerSeries(self.ring, tuple(h), self.variable)

    def derivative(self) -> "FormalPowerSeries":
        return FormalPowerSeries(self.ring, self.coeffs[1:], self.variable)

    def map_coeffs(self, fn, ring) -> "FormalPowerSeries":
        ring = ring if isinstance(ring, VariableSet) else VariableSet(ring)
        return FormalPowerSeries(ring, tuple(fn(c) for c in self.coeffs), self.variable)

    def taylor(self, m: int):
        """Ordinary Taylor coefficient ``[u^m] f`` as (numerator poly, denominator m!)."""
        return self.coeffs[m], factorial(m)

    def is_even(self) -> bool:
        return all(not c for m, c in enumerate(self.coeffs) if m % 2)

    def is_odd(self) -> bool:
        return all(not c for m, c in enumerate(self.coeffs) if m % 2 == 0)

    def evaluate(self, u: complex, point: Dict[str, complex]) -> complex:
        total = 0j
        for m, c in enumerate(self.coeffs):
            if c:
                total += c.eval(point) * u ** m / factorial(m)
        return total

    def to_json(self) -> dict:
        return {
            "variable": self.variable,
            "ring": list(self.ring),
            "order": self.order,
            "normalization": "egf",
            "coeffs": [str(c) for c in self.coeffs],
        }


@lru_cache(maxsize=None)
def jacobi_two_param(order: int):
    """(sn, cn, dn) over Z[a2, b2] from sn' = cn dn, cn' = a2 sn dn, dn' = b2 sn cn."""
    if order < 1:
        raise ValueError("order must be >= 1")
    ring = TWO_PARAM_RING
    a2 = Poly.var(ring, "a2")
    b2 = Poly.var(ring, "b2")
    zero = Poly(ring)
    one = Poly.constant(ring, 1)
    sn, cn, dn = [zero], [one], [one]

    def conv(f, g, m):
        acc = Poly(ring)
        for k in range(m + 1):
            if f[k] and g[m - k]:
                acc = acc + f[k] * g[m - k] * comb(m, k)
        return acc

    # EGF numerators: f_{m+1} = (f')_m
    for m in range(order):
        sn.append(conv(cn, dn, m))
        cn.append(a2 * conv(sn, dn, m))
        dn.append(b2 * conv(sn, cn, m))
    mk = lambda c: FormalPowerSeries(ring, tuple(c))  # noqa: E731
    return mk(sn), mk(cn), mk(dn)


@lru_cache(maxsize=None)
def jacobi_classical(order: int):
    """(sn, cn, dn) over Z[k2] by specializing a2 -> -1, b2 -> -k2."""
    ring = CLASSICAL_RING
    k2 = Poly.var(ring, "k2")
    bind = {"a2": Poly.constant(ring, -1), "b2": -k2}
    return tuple(
        f.map_coeffs(lambda c: c.subs(bind, ring), ring) for f in jacobi_two_param(order)
    )


def jacobi_classical_direct(order: int):
    """Classical (sn, cn, dn) integrated directly from Abel's system."""
    ring = CLASSICAL_RING
    k2 = Poly.var(ring, "k2")
    zero, one = Poly(ring), Poly.constant(ring, 1)
    sn, cn, dn = [zero], [one], [one]

    def conv(f, g, m):
        acc = Poly(ring)
        for k in range(m + 1):
            if f[k] and g[m - k]:
                acc = acc + f[k] * g[m - k] * comb(m, k)
        return acc

    for m in range(order):
        sn.append(conv(cn, dn, m))
        cn.append(-conv(sn, dn, m))
        dn.append(-k2 * conv(sn, cn, m))
    return tuple(FormalPowerSeries(ring, tuple(c)) for c in (sn, cn, dn))


@lru_cache(maxsize=None)
def j_polynomials(order: int) -> Dict[int, Poly]:
    """J_n(k^2) for 0 <= n <= order, read off the classical sn and cn.

    sn = sum (-1)^m J_{2m+1} u^{2m+1}/(2m+1)! and cn = sum (-1)^m J_{2m} u^{2m}/(2m)!,
    the latter taken from m = 0 so that J_0 = 1 and the constant term is not doubled.
    """
    sn, cn, _ = jacobi_classical(order)
    out = {}
    for n in range(order + 1):
        src = sn if n % 2 else cn
        sign = -1 if (n // 2) % 2 else 1
        out[n] = src[n] * sign
    return out


def j_coefficients(order: int) -> Dict[Tuple[int, int], int]:
    """``{(n, 2i): J_{n,2i}}``, the coefficient of k^{2i} in J_n(k^2)."""
    table = {}
    for n, poly in j_polynomials(order).items():
        for (e,), c in poly.terms.items():
            table[(n, 2 * e)] = c
    return table


@lru_cache(maxsize=None)
def dumont_rhs(order: int) -> FormalPowerSeries:
    """(yz sn + x cn dn) / (1 - x^2 sn^2) over Z[x,y,z] with a^2 = y^2 - x^2, b^2 = z^2 - x^2."""
    ring = VariableSet(("x", "y", "z"))
    x, y, z = (Poly.var(ring, v) for v in ring)
    bind = {"a2": y * y - x * x, "b2": z * z - x * x}
    sn, cn, dn = (f.map_coeffs(lambda c: c.subs(bind, ring), ring) for f in jacobi_two_param(order))
    numer = sn.scale(y * z) + (cn * dn).scale(x)
    denom = FormalPowerSeries.constant(ring, 1, order) - (sn * sn).scale(x * x)
    return numer * denom.reciprocal()


def verify_dumont_gf(order: int) -> VerificationReport:
    """Compare D^n(x) under x->yz, y->xz, z->xy with the closed form, n <= order."""
    start = time.perf_counter()
    g = schett()
    lhs = iterate_all(OperatorSpec("D", g, Poly.var(g.ring, "x")), order)
    rhs = dumont_rhs(order)
    for n in range(order + 1):
        if lhs[n] != rhs[n]:
            diff = lhs[n] - rhs[n]
            return VerificationReport(
                "dumont-gf", (0, order), False,
                counterexample={"n": n, "difference": str(diff)},
                elapsed=time.perf_counter() - start,
            )
    return VerificationReport("dumont-gf", (0, order), True, elapsed=time.perf_counter() - start)


def verify_convolution(order: int, triangles=None) -> List[VerificationReport]:
    """Both J-convolutions and the intermediate t-convolutions for n <= order."""
    from .triangles import get_triangle

    top = 2 * order + 2
    start = time.perf_counter()
    J = j_coefficients(top)
    t = get_triangle("t", top)
    s = get_triangle("s", top)
    reports = []

    def jj(n, e):
        return J.get((n, e), 0) if e >= 0 else 0

    def run(case_id, checks):
        t0 = time.perf_counter()
        for key, lhs, rhs in checks:
            if lhs != rhs:
                return VerificationReport(case_id, (0, order), False,
                                          counterexample={"index": key, "lhs": lhs, "rhs": rhs},
                                          elapsed=time.perf_counter() - t0)
        return VerificationReport(case_id, (0, order), True, elapsed=time.perf_counter() - t0)

    def j_first():
        for n in range(order + 1):
            for i in range(n + 1):
                rhs = sum(
                    comb(2 * n, 2 * k) * jj(2 * k, 2 * k - 2 * j) * jj(2 * n - 2 * k, 2 * i - 2 * j)
                    for k in range(n + 1) for j in range(i + 1)
                )
                yield (n, i), jj(2 * n + 1, 2 * n - 2 * i), rhs

    def j_second():
        for n in range(order + 1):
            for i in range(n + 1):
                rhs = sum(
                    comb(2 * n + 1, 2 * k + 1) * jj(2 * k + 1, 2 * k - 2 * j) * jj(2 * n - 2 * k, 2 * i - 2 * j)
                    for k in range(n + 1) for j in range(i + 1)
                )
                yield (n, i), jj(2 * n + 2, 2 * n - 2 * i), rhs

    def t_first():
        for n in range(order + 1):
            for i in range(n + 1):
                rhs = sum(
                    comb(2 * n, 2 * k) * t.get(2 * k, j, 0) * s.get(2 * n - 2 * k, i - j, 0)
                    for k in range(n + 1) for j in range(i + 1)
                )
                yield (n, i), t.get(2 * n + 1, i, 0), rhs

    def t_second():
        for n in range(order + 1):
            for i in range(n + 1):
                rhs = sum(
                    comb(2 * n + 1, 2 * k + 1) * t.get(2 * k + 1, j, 0) * s.get(2 * n - 2 * k, i - j, 0)
                    for k in range(n + 1) for j in range(i + 1)
                )
                yield (n, i), t.get(2 * n + 2, i + 1, 0), rhs

    reports.append(run("j-convolution.odd", j_first()))
    reports.append(run("j-convolution.even", j_second()))
    reports.append(run("t-convolution.odd", t_first()))
    reports.append(run("t-convolution.even", t_second()))
    return reports
