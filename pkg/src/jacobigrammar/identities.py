"""Exact checks of the combinatorial theorems: triangles against brute-force tables.

Each case yields ``(key, lhs, rhs)`` triples; the first mismatch becomes the
counterexample.  Where an index convention is ambiguous, the literal reading
is tried first and the reading that validated is recorded in the report.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from math import comb, factorial
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from . import permstats as ps
from .exactpoly import Poly
from .report import VerificationReport
from .series import j_coefficients, verify_convolution, verify_dumont_gf
from .triangles import get_triangle

X = ("x",)
XV = Poly.var(X, "x")
ONE = Poly.constant(X, 1)

Check = Tuple[object, object, object]


# ---------------------------------------------------------------- helpers

def _poly(coeffs: Dict[int, int]) -> Poly:
    return Poly(X, {(k,): v for k, v in coeffs.items()})


def _shifted(coeffs: Dict[int, int], top: int) -> Poly:
    """sum_i c_i x^(top - i); a negative exponent is reported as a ValueError."""
    terms = {}
    for i, v in coeffs.items():
        if top - i < 0:
            raise ValueError(f"exponent {top - i} for index {i}")
        terms[(top - i,)] = v
    return Poly(X, terms)


def P(n):
    return ps.interior_peaks(n).as_poly()


def Pt(n):
    return ps.left_peaks(n).as_poly()


def A(n):
    return ps.descents(n).as_poly()


def N(n):
    return ps.matchings_odd_smaller(n).as_poly()


def _coeff(poly: Poly, k: int) -> int:
    return poly.coeff((k,)) if k >= 0 else 0


def _dict_eq(key, lhs: Dict[int, int], rhs: Dict[int, int]) -> Iterable[Check]:
    for k in sorted(set(lhs) | set(rhs)):
        yield (key, k), lhs.get(k, 0), rhs.get(k, 0)


def _first_failure(checks: Iterable[Check]):
    for key, lhs, rhs in checks:
        if lhs != rhs:
            return {"index": key, "lhs": _show(lhs), "rhs": _show(rhs)}
    return None


def _show(v):
    return str(v) if isinstance(v, Poly) else v


def _report(case_id: str, lo: int, hi: int, readings: Sequence[Tuple[str, Callable[[], Iterable[Check]]]],
            **details) -> VerificationReport:
    """Try readings in order; pass on the first one that holds everywhere."""
    t0 = time.perf_counter()
    literal_cx = None
    tried = []
    for name, make in readings:
        try:
            cx = _first_failure(make())
        except ValueError as exc:
            cx = {"error": str(exc)}
        tried.append(name)
        if cx is None:
            if len(readings) > 1 or name != "literal":
                details["reading"] = name
            if literal_cx is not None:
                details["literal_counterexample"] = literal_cx
            return VerificationReport(case_id, (lo, hi), True, None, time.perf_counter() - t0, details)
        if literal_cx is None:
            literal_cx = cx
    details["readings_tried"] = tried
    return VerificationReport(case_id, (lo, hi), False, literal_cx, time.perf_counter() - t0, details)


def _cap(n_max: int, bound: int) -> int:
    return min(n_max, bound)


S_CAP = ps.MAX_SYMMETRIC
B_CAP = ps.MAX_SIGNED
M_CAP = ps.MAX_MATCHING


# ---------------------------------------------------------------- mainthm:01

def check_mainthm01(n_max: int = 9) -> List[VerificationReport]:
    a = get_triangle("a", n_max)
    c = get_triangle("c", n_max)
    d = get_triangle("d", n_max)
    out = []

    def i_():
        for n in range(1, n_max + 1):
            yield n, a.total(n), ps.double_factorial(n)

    out.append(_report("mainthm01.i", 1, n_max, [("literal", i_)]))

    top = _cap(n_max, M_CAP)

    def ii():
        for n in range(1, top + 1):
            Nn = ps.matchings_odd_smaller(n)
            yield from _dict_eq(n, a.sum_over_j(n), {n - k: v for k, v in Nn.counts.items()})

    out.append(_report("mainthm01.ii", 1, top, [("literal", ii)]))

    top = _cap(n_max, S_CAP)

    def iii():
        for n in range(1, top + 1):
            h = n // 2
            yield (n, "column"), _poly(a.column(n, h)), Pt(n)
            yield (n, "antidiagonal"), _poly(a.antidiagonal(n, h)), Pt(n)

    out.append(_report("mainthm01.iii", 1, top, [("literal", iii)]))

    def iv():
        for n in range(1, top + 1):
            An = ps.descents(n)
            yield from _dict_eq(n, c.sum_over_j(n), {k: 2 ** n * v for k, v in An.counts.items()})

    out.append(_report("mainthm01.iv", 1, top, [("literal", iv)]))

    btop = _cap(n_max, B_CAP)

    def v():
        for n in range(1, btop + 1):
            yield from _dict_eq(n, d.sum_over_j(n), ps.descents_type_b(n).counts)

    out.append(_report("mainthm01.v", 1, btop, [("literal", v)]))

    vtop = _cap(n_max, S_CAP - 1)

    def vi():
        for n in range(1, vtop + 1):
            h = n // 2
            yield (n, "column"), _poly(c.column(n, h)), P(n + 1)
            yield (n, "antidiagonal"), _poly(c.antidiagonal(n, h)), P(n + 1)

    out.append(_report("mainthm01.vi", 1, vtop, [("literal", vi)]))

    def vii():
        m = 1
        while 2 * m <= min(n_max, S_CAP):
            yield (2 * m - 1, "odd level"), _shifted(c.column(2 * m - 1, 0), 2 * m - 2), P(2 * m)
            yield (2 * m, "even level"), _shifted(c.column(2 * m, 0), 2 * m - 1), P(2 * m)
            m += 1

    out.append(_report("mainthm01.vii", 1, min(n_max, S_CAP), [("literal", vii)]))

    def viii():
        for n in range(1, vtop + 1):
            h = (n + 1) // 2
            yield (n, "column"), _poly(d.column(n, h)), Pt(n)
            yield (n, "antidiagonal"), _poly(d.antidiagonal(n, h)), Pt(n + 1)

    out.append(_report("mainthm01.viii", 1, vtop, [("literal", viii)]))

    def ix():
        m = 0
        while 2 * m + 1 <= min(n_max, S_CAP):
            if m:
                yield (2 * m, "even level"), _shifted(d.column(2 * m, 0), 2 * m), Pt(2 * m + 1)
            yield (2 * m + 1, "odd level"), _shifted(d.column(2 * m + 1, 0), 2 * m + 1), Pt(2 * m + 1)
            m += 1

    out.append(_report("mainthm01.ix", 1, min(n_max, S_CAP), [("literal", ix)]))
    return out


# ---------------------------------------------------------------- Concludingremarks:01

def check_concluding01(n_max: int = 9) -> List[VerificationReport]:
    b = get_triangle("b", n_max)
    out = []

    def i_():
        for n in range(1, n_max + 1):
            yield n, b.total(n), ps.double_factorial(n)

    out.append(_report("concl01.i", 1, n_max, [("literal", i_)]))

    top = _cap(n_max, M_CAP)

    def ii():
        for n in range(1, top + 1):
            Nn = ps.matchings_odd_smaller(n)
            yield from _dict_eq(n, b.sum_over_j(n), {k - 1: v for k, v in Nn.counts.items()})

    out.append(_report("concl01.ii", 1, top, [("literal", ii)]))

    vtop = _cap(n_max, S_CAP - 1)
    odd_coefficients = []

    def iii():
        for n in range(1, vtop + 1):
            h = n // 2
            nxt = P(n + 1)
            if any(v % 2 for v in nxt.terms.values()):
                odd_coefficients.append(n + 1)
            yield (n, "column"), _poly(b.column(n, h)), P(n)
            yield (n, "antidiagonal, doubled"), _poly(b.antidiagonal(n, h)) * 2, nxt

    rep = _report("concl01.iii", 1, vtop, [("literal", iii)])
    rep.details["half_P_integral"] = not odd_coefficients
    if odd_coefficients:
        rep.details["odd_coefficient_levels"] = odd_coefficients
    out.append(rep)
    return out


# ---------------------------------------------------------------- mainthm:02

def check_mainthm02(n_max: int = 9) -> List[VerificationReport]:
    t = get_triangle("t", n_max)
    r = get_triangle("r", n_max)
    top = _cap(n_max, S_CAP)
    rtop = _cap(n_max, S_CAP - 1)
    out = []

    def i_():
        for n in range(1, top + 1):
            yield (n, "t"), t.total(n), factorial(n)
            yield (n, "r"), r.total(n - 1), factorial(n)

    out.append(_report("mainthm02.i", 1, top, [("literal", i_)]))

    def ii():
        for n in range(1, top + 1):
            las = ps.longest_alt_subseq(n).counts
            udr = ps.up_down_runs(n).counts
            yield from _dict_eq((n, "as-vs-updown"), las, udr)
            yield from _dict_eq((n, "as"), t.sum_over_i(n), {n - k: v for k, v in las.items()})
            yield from _dict_eq((n, "updown"), t.sum_over_i(n), {n - k: v for k, v in udr.items()})

    out.append(_report("mainthm02.ii", 1, top, [("literal", ii)]))

    def iii():
        for n in range(1, top + 1):
            lp = ps.left_peaks(n).counts
            yield from _dict_eq(n, t.sum_over_j(n), {n // 2 - k: v for k, v in lp.items()})

    out.append(_report("mainthm02.iii", 1, top, [("literal", iii)]))

    def iv():
        for n in range(1, rtop + 1):
            runs = ps.alternating_runs(n + 1).counts
            yield from _dict_eq(n, r.sum_over_i(n), {n - k: v for k, v in runs.items()})

    out.append(_report("mainthm02.iv", 1, rtop, [("literal", iv)]))

    def v():
        for n in range(1, rtop + 1):
            ip = ps.interior_peaks(n + 1).counts
            yield from _dict_eq(n, r.sum_over_j(n), {n // 2 - k: v for k, v in ip.items()})

    out.append(_report("mainthm02.v", 1, rtop, [("literal", v)]))
    return out


def check_euler_numbers(n_max: int = 9) -> VerificationReport:
    """P_{2n+1,n} = E_{2n+1}, Pt_{2n,n} = E_{2n}, and the symmetric t/r arrays."""
    top = _cap(n_max, S_CAP)
    E = ps.euler_numbers(top)
    t = get_triangle("t", top)
    r = get_triangle("r", top)

    def checks():
        for n in range(1, top + 1):
            if n % 2:
                yield (n, "P"), _coeff(P(n), n // 2), E[n]
            else:
                yield (n, "Pt"), _coeff(Pt(n), n // 2), E[n]
        for m in range(1, top // 2 + 1):
            yield (2 * m, "t00"), t.get(2 * m, 0, 0), 0
            yield (2 * m, "r00"), r.get(2 * m, 0, 0), 0
            yield (2 * m - 1, "t00"), t.get(2 * m - 1, 0, 0), 1
            yield (2 * m - 1, "r00"), r.get(2 * m - 1, 0, 0), 2
            for j in range(1, 2 * m):
                yield (2 * m, j, "t-sym"), t.get(2 * m, 0, j), t.get(2 * m, 0, 2 * m - j)
                yield (2 * m, j, "t-shift"), t.get(2 * m, 0, j), t.get(2 * m - 1, 0, j - 1)
                yield (2 * m, j, "r-sym"), r.get(2 * m, 0, j), r.get(2 * m, 0, 2 * m - j)
                yield (2 * m, j, "r-shift"), r.get(2 * m, 0, j), r.get(2 * m - 1, 0, j - 1)
            # rows of the symmetric array: t_{2m,0,.} sums to E_{2m}, r_{2m,0,.} to E_{2m+1}
            yield (2 * m, "t-row"), sum(t.row(2 * m, 0).values()), E[2 * m]
            if 2 * m + 1 <= top:
                yield (2 * m, "r-row"), sum(r.row(2 * m, 0).values()), E[2 * m + 1]

    return _report("euler-numbers", 1, top, [("literal", checks)])


# ---------------------------------------------------------------- polynomial identities

def _phi_num(poly: Poly, gap: int, scale: int) -> Poly:
    """(1+x)^gap * poly(scale*x/(1+x)^2), homogenised term by term."""
    out = Poly(X)
    for (k,), v in poly.terms.items():
        if gap - 2 * k < 0:
            raise ValueError(f"degree {k} exceeds homogenisation gap {gap}")
        out = out + (XV * scale) ** k * (ONE + XV) ** (gap - 2 * k) * v
    return out


def check_polynomial_identities(n_max: int = 9) -> List[VerificationReport]:
    top = _cap(n_max, S_CAP)
    btop = _cap(n_max, B_CAP)
    mtop = _cap(n_max, M_CAP)
    out = []

    def stembridge():
        for n in range(1, top + 1):
            yield n, _phi_num(P(n), n - 1, 4), A(n) * 2 ** (n - 1)

    out.append(_report("stembridge", 1, top, [("literal", stembridge)]))

    def petersen():
        for n in range(1, top + 1):
            rhs = (ONE - XV) ** n
            for i in range(1, n + 1):
                rhs = rhs + (ONE - XV) ** (n - i) * XV * A(i) * (comb(n, i) * 2 ** i)
            yield n, _phi_num(Pt(n), n, 4), rhs

    out.append(_report("petersen", 1, top, [("literal", petersen)]))

    def type_b():
        for n in range(1, btop + 1):
            yield n, _phi_num(Pt(n), n, 4), ps.descents_type_b(n).as_poly()

    out.append(_report("typeB", 1, btop, [("literal", type_b)]))

    def runs_peaks():
        for n in range(2, top + 1):
            rhs = Poly(X)
            for (k,), v in P(n).terms.items():
                rhs = rhs + (XV * 2) ** k * (ONE + XV) ** (n - 2 - k) * v
            yield n, ps.alternating_runs(n).as_poly() * 2 ** (n - 2), XV * rhs

    out.append(_report("runs-peaks", 2, top, [("literal", runs_peaks)]))

    def convolution(shift: bool):
        def gen():
            for n in range(1, mtop + 1):
                rhs = sum((N(k) * N(n - k) * comb(n, k) for k in range(n + 1)), Poly(X))
                lhs = A(n) * 2 ** n
                yield n, lhs * XV if shift else lhs, rhs
        return gen

    out.append(_report("eulerian-matching-convolution", 1, mtop,
                       [("literal", convolution(False)),
                        ("x*A_n(x) (descents counted from 1)", convolution(True))]))

    ptop = _cap(n_max, S_CAP - 1)

    def rec_p():
        for n in range(1, ptop + 1):
            Pn = P(n)
            rhs = (XV * (n - 1) + 2) * Pn + XV * (ONE - XV) * Pn.diff("x") * 2
            yield n, P(n + 1), rhs

    out.append(_report("recurrences.P", 1, ptop, [("literal", rec_p)]))

    def rec_pt():
        for n in range(1, ptop + 1):
            Pn = Pt(n)
            rhs = (XV * n + 1) * Pn + XV * (ONE - XV) * Pn.diff("x") * 2
            yield n, Pt(n + 1), rhs

    out.append(_report("recurrences.Ptilde", 1, ptop, [("literal", rec_pt)]))

    def rec_n():
        for n in range(0, mtop):
            Nn = N(n)
            rhs = XV * Nn * (2 * n + 1) + XV * (ONE - XV) * Nn.diff("x") * 2
            yield n, N(n + 1), rhs

    out.append(_report("recurrences.N", 0, mtop - 1, [("literal", rec_n)]))
    return out


# ---------------------------------------------------------------- J-coefficients

def check_jacobi_tnij(n_max: int = 12) -> VerificationReport:
    J = j_coefficients(n_max)
    t = get_triangle("t", n_max)

    def checks():
        for n in range(1, n_max + 1):
            lhs = {i: J.get((n, 2 * i), 0) for i in range(n)}
            rhs = {i: t.get(n, n // 2 - i, 0) for i in range(n // 2 + 1)}
            yield from _dict_eq(n, lhs, rhs)

    return _report("jacobi-tnij", 1, n_max, [("literal", checks)])


def check_dumont_s_j(n_max: int = 5) -> VerificationReport:
    """s_{2n,i,0} = J_{2n,2i} and s_{2n+1,i,0} = J_{2n+2,2i}."""
    J = j_coefficients(2 * n_max + 2)
    s = get_triangle("s", 2 * n_max + 1)

    def checks():
        for n in range(1, n_max + 1):
            even = {i: J.get((2 * n, 2 * i), 0) for i in range(2 * n)}
            yield from _dict_eq((2 * n, "even"), s.column(2 * n, 0), {k: v for k, v in even.items() if v})
            odd = {i: J.get((2 * n + 2, 2 * i), 0) for i in range(2 * n + 2)}
            yield from _dict_eq((2 * n + 1, "odd"), s.column(2 * n + 1, 0), {k: v for k, v in odd.items() if v})

    return _report("dumont-s-j", 1, n_max, [("literal", checks)])


def check_cycle_peaks(n_max: int = 9) -> VerificationReport:
    """s_{n,i,j} = #{pi in S_n : X(pi) = i, Y(pi) = j} (odd / even cycle peaks)."""
    top = _cap(n_max, S_CAP)
    s = get_triangle("s", top)

    def checks():
        for n in range(1, top + 1):
            got = s.level(n)
            want = ps.cycle_peaks_xy(n).counts
            for key in sorted(set(got) | set(want)):
                yield (n,) + key, got.get(key, 0), want.get(key, 0)

    return _report("cycle-peaks", 1, top, [("literal", checks)])


# ---------------------------------------------------------------- conjecture

def check_conjecture(n_max: int = 9) -> VerificationReport:
    s = get_triangle("s", n_max)
    t = get_triangle("t", n_max)

    def checks():
        for m in range(1, n_max + 1):
            for i in range(m + 1):
                for j in range(m + 1):
                    lhs = s.get(m, j, i)
                    if m % 2:
                        rhs = t.get(m, i, 0) if j == 0 else t.get(m, i, 2 * j - 1) + t.get(m, i, 2 * j)
                    else:
                        rhs = t.get(m, i, 2 * j) + t.get(m, i, 2 * j + 1)
                    yield (m, i, j), lhs, rhs
            # nothing of t may be left uncovered by the j-grouping
            yield (m, "t-total"), t.total(m), sum(s.level(m).values())

    return _report("conjecture", 1, n_max, [("literal", checks)])


# ---------------------------------------------------------------- registry

@dataclass(frozen=True)
class IdentityCase:
    id: str
    inputs: Tuple[str, ...]
    default_n: int
    run: Callable[[int], VerificationReport]
    description: str = ""


def _pick(fn: Callable[[int], List[VerificationReport]], case_id: str) -> Callable[[int], VerificationReport]:
    def run(n: int) -> VerificationReport:
        for rep in fn(n):
            if rep.id == case_id:
                return rep
        raise KeyError(case_id)
    return run


def _series_case(case_id: str) -> Callable[[int], VerificationReport]:
    def run(n: int) -> VerificationReport:
        for rep in verify_convolution(n):
            if rep.id == case_id:
                return rep
        raise KeyError(case_id)
    return run


def _merge_reports(case_id: str, reports: List[VerificationReport]) -> VerificationReport:
    bad = [r for r in reports if not r.passed]
    lo = min(r.range[0] for r in reports)
    hi = max(r.range[1] for r in reports)
    elapsed = sum(r.elapsed for r in reports)
    details = {r.id: r.status for r in reports}
    if bad:
        return VerificationReport(case_id, (lo, hi), False, {"part": bad[0].id, **bad[0].counterexample},
                                  elapsed, details)
    return VerificationReport(case_id, (lo, hi), True, None, elapsed, details)


def _j_convolution(n: int) -> VerificationReport:
    return _merge_reports("j-convolution", [r for r in verify_convolution(n) if r.id.startswith("j-")])


def _t_convolution(n: int) -> VerificationReport:
    return _merge_reports("t-convolution", [r for r in verify_convolution(n) if r.id.startswith("t-")])


def _dumont_gf(n: int) -> VerificationReport:
    return verify_dumont_gf(n)


def _build_registry() -> Dict[str, IdentityCase]:
    cases: List[IdentityCase] = []
    for item in ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix"):
        cases.append(IdentityCase(f"mainthm01.{item}", ("a", "c", "d", "S_n", "B_n", "matchings"), 9,
                                  _pick(check_mainthm01, f"mainthm01.{item}")))
    for item in ("i", "ii", "iii"):
        cases.append(IdentityCase(f"concl01.{item}", ("b", "S_n", "matchings"), 9,
                                  _pick(check_concluding01, f"concl01.{item}")))
    for item in ("i", "ii", "iii", "iv", "v"):
        cases.append(IdentityCase(f"mainthm02.{item}", ("t", "r", "S_n"), 9,
                                  _pick(check_mainthm02, f"mainthm02.{item}")))
    for cid in ("stembridge", "petersen", "typeB", "runs-peaks", "eulerian-matching-convolution",
                "recurrences.P", "recurrences.Ptilde", "recurrences.N"):
        cases.append(IdentityCase(cid, ("S_n", "B_n", "matchings"), 9,
                                  _pick(check_polynomial_identities, cid)))
    cases += [
        IdentityCase("euler-numbers", ("t", "r", "S_n"), 9, check_euler_numbers),
        IdentityCase("cycle-peaks", ("s", "S_n"), 9, check_cycle_peaks),
        IdentityCase("jacobi-tnij", ("J", "t"), 12, check_jacobi_tnij),
        IdentityCase("dumont-s-j", ("J", "s"), 5, check_dumont_s_j),
        IdentityCase("j-convolution", ("J",), 5, _j_convolution),
        IdentityCase("t-convolution", ("t", "s"), 5, _t_convolution),
        IdentityCase("dumont-gf", ("D^n(x)", "sn/cn/dn series"), 10, _dumont_gf),
        IdentityCase("conjecture", ("s", "t"), 9, check_conjecture),
    ]
    return {c.id: c for c in cases}


REGISTRY: Dict[str, IdentityCase] = _build_registry()


def run_case(case_id: str, n: Optional[int] = None) -> VerificationReport:
    try:
        case = REGISTRY[case_id]
    except KeyError:
        raise KeyError(f"unknown identity {case_id!r}") from None
    return case.run(case.default_n if n is None else n)
