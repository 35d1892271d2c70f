"""Acceptance criteria 1-11, one PASS/FAIL line each (also echoed in the terminal summary)."""
import time

import pytest

from jacobigrammar import identities, numcheck
from jacobigrammar.triangles import NAMES, extract, get_triangle, recur
from jacobigrammar.exactpoly import parse
from jacobigrammar.triangles import PQ_RING

LINES = {}


def record(k, ok, detail):
    line = f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    LINES[k] = line
    print(line)
    return ok


def run_all(ids, n):
    reps = [identities.run_case(cid, n) for cid in ids]
    bad = [r for r in reps if not r.passed]
    return reps, bad


def _fmt_bad(bad):
    return "; ".join(f"{r.id} {r.counterexample}" for r in bad)


def test_c01_cross_method():
    t0 = time.perf_counter()
    diffs = {}
    for name in NAMES:
        g, r = extract(name, 12), recur(name, 12)
        if not g.same_entries(r):
            diffs[name] = g.first_difference(r)
    dt = time.perf_counter() - t0
    ok = not diffs and dt <= 60
    record(1, ok, f"extract == recur for {','.join(NAMES)}, n<=12, {dt:.2f}s {diffs or ''}")
    assert ok, diffs


def test_c02_golden(golden):
    problems = []
    tabs = golden["paper_tables"]
    for name in ("t", "r"):
        tr = get_triangle(name, 4)
        for n, rows in tabs[name].items():
            want = {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row) if v}
            if tr.level(int(n)) != want:
                problems.append(f"{name}{n}")
    t, r = get_triangle("t", 6), get_triangle("r", 6)
    sym = []
    for m in range(1, 4):
        sym += [[t.get(2 * m, 0, j) for j in range(1, 2 * m)], [r.get(2 * m, 0, j) for j in range(1, 2 * m)]]
    if sym != tabs["symmetric_array"]:
        problems.append("symmetric array")
    for name in ("a", "c", "d", "t", "r"):
        printed = golden["paper_expansions"][name]
        tr = get_triangle(name, len(printed))
        for n, text in enumerate(printed):
            if tr.generating_polynomial(n) != parse(text, PQ_RING):
                problems.append(f"{name.upper()} order {n}")
    ok = not problems
    record(2, ok, f"t/r tables n<=4, symmetric array, A C D T R expansions {problems or ''}")
    assert ok, problems


def _identity_criterion(k, ids, n, label):
    reps, bad = run_all(ids, n)
    notes = [f"{r.id}: reading {r.details['reading']!r}" for r in reps if "reading" in r.details]
    detail = f"{label}, n<={n}"
    if notes:
        detail += " [" + "; ".join(notes) + "]"
    if bad:
        detail += " failures: " + _fmt_bad(bad)
    record(k, not bad, detail)
    assert not bad, _fmt_bad(bad)


def test_c03_mainthm01():
    ids = [f"mainthm01.{x}" for x in ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix")]
    _identity_criterion(3, ids, 9, "mainthm01 (i)-(ix) (B_n items n<=7)")


def test_c04_concluding():
    _identity_criterion(4, ["concl01.i", "concl01.ii", "concl01.iii"], 9,
                        "concluding theorem (i)-(iii) (matchings n<=8)")


def test_c05_mainthm02():
    _identity_criterion(5, [f"mainthm02.{x}" for x in ("i", "ii", "iii", "iv", "v")], 9,
                        "mainthm02 (i)-(v), DP table == up-down table")


def test_c06_jacobi():
    reps = [identities.run_case("jacobi-tnij", 12), identities.run_case("dumont-s-j", 5),
            identities.run_case("j-convolution", 5)]
    bad = [r for r in reps if not r.passed]
    record(6, not bad, "J_{n,2i}=t_{n,n//2-i,0} n<=12, s_{2n,i,0}=J_{2n,2i} n<=5, both convolutions n<=5"
           + (" failures: " + _fmt_bad(bad) if bad else ""))
    assert not bad, _fmt_bad(bad)


def test_c07_dumont_gf():
    rep = identities.run_case("dumont-gf", 10)
    ok = rep.passed and rep.elapsed <= 120
    record(7, ok, f"generating function for D^n(x), n<=10, {rep.elapsed:.2f}s"
           + ("" if rep.passed else f" {rep.counterexample}"))
    assert ok, rep.counterexample


def test_c08_polynomial_identities():
    ids = ["stembridge", "petersen", "typeB", "runs-peaks", "eulerian-matching-convolution",
           "recurrences.P", "recurrences.Ptilde", "recurrences.N"]
    _identity_criterion(8, ids, 9, "Stembridge, Petersen, B_n, R_n<->P_n, 2^n A_n convolution, 3 recurrences")


C9_IDS = ["lem:aa0", "th-aa", "thCCth", "CO:caseC.p0", "CO:caseC.p1", "CO:caseC.q0", "CO:caseC.q1",
          "thDDth", "CO:caseD.q0", "CO:caseD.p1", "CO:caseD.q1", "th_TT", "th_TT-corollary.q1",
          "th_TT-corollary.p1", "th_RR", "binomial-sum.C", "binomial-sum.D"]


def test_c09_closed_forms():
    t0 = time.perf_counter()
    reps = [numcheck.compare(cid, order=12, samples=5, tol=1e-8, xmax=0.1) for cid in C9_IDS]
    dt = time.perf_counter() - t0
    bad = [r for r in reps if not r.passed]
    for r in reps:
        print(f"    {r.status.upper():4} {r.id:<22} samples={r.details['samples']} "
              f"worst_rel_err={r.details['worst_rel_err']:.2e}")
    ok = not bad and dt <= 60
    detail = f"{len(reps) - len(bad)}/{len(reps)} closed forms within 1e-8, {dt:.2f}s"
    if bad:
        detail += "; failing: " + ", ".join(
            f"{r.id} (rel_err {r.counterexample.get('rel_err', float('nan')):.2e})" for r in bad)
    record(9, ok, detail)
    assert ok, detail


def test_c10_conjecture():
    rep = identities.run_case("conjecture", 9)
    cx = rep.counterexample
    concrete = rep.passed or (cx is not None and "index" in cx)
    record(10, concrete, "conjecture sweep n<=9: " + ("PASS" if rep.passed else f"counterexample {cx}"))
    assert concrete


def test_c11_rk4_order():
    ratio = numcheck.rk4_order_ratio(u=0.5, k2=0.5)
    ok = 12 <= ratio <= 20
    record(11, ok, f"RK4 step-halving error ratio {ratio:.3f} (sn, u=0.5, k^2=0.5)")
    assert ok
