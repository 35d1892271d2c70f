import csv
import io
from math import factorial

import pytest

from jacobigrammar.exactpoly import parse
from jacobigrammar.permstats import double_factorial
from jacobigrammar.triangles import NAMES, PQ_RING, Triangle, extract, get_triangle, recur


@pytest.mark.parametrize("name", NAMES)
def test_methods_agree(name):
    g, r = extract(name, 10), recur(name, 10)
    assert g.same_entries(r), g.first_difference(r)


@pytest.mark.parametrize("name", ["t", "r"])
def test_small_tables(golden, name):
    tab = get_triangle(name, 4)
    for n, rows in golden["paper_tables"][name].items():
        n = int(n)
        want = {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row) if v}
        assert tab.level(n) == want


def test_symmetric_array_rows(golden):
    t, r = get_triangle("t", 6), get_triangle("r", 6)
    rows = []
    for m in range(1, 4):
        rows.append([t.get(2 * m, 0, j) for j in range(1, 2 * m)])
        rows.append([r.get(2 * m, 0, j) for j in range(1, 2 * m)])
    assert rows == golden["paper_tables"]["symmetric_array"]


@pytest.mark.parametrize("name", ["a", "b", "c", "d", "t", "r"])
def test_generating_polynomials(golden, name):
    printed = golden["paper_expansions"][name]
    tab = get_triangle(name, len(printed))
    for n, text in enumerate(printed):
        assert tab.generating_polynomial(n) == parse(text, PQ_RING), (name, n)


def test_totals():
    a, c, s = get_triangle("a", 9), get_triangle("c", 9), get_triangle("s", 9)
    for n in range(1, 10):
        assert a.total(n) == double_factorial(n)  # (2n-1)!!
        assert s.total(n) == factorial(n)
        assert c.total(n) == 2 ** n * factorial(n)


def test_round_trips():
    tab = get_triangle("d", 6)
    assert Triangle.from_json(tab.to_json()).same_entries(tab)
    rows = list(csv.reader(io.StringIO(tab.to_csv())))
    assert rows[0] == ["n", "i", "j", "value"]
    assert {(int(n), int(i), int(j)): int(v) for n, i, j, v in rows[1:]} == tab.entries


def test_slices():
    t = get_triangle("t", 4)
    assert t.row(4, 1) == {0: 4, 1: 10, 2: 4}
    assert t.column(4, 0) == {1: 4, 2: 1}
    assert t.antidiagonal(4, 2) == {0: 3, 1: 10, 2: 1}
    assert t.sum_over_j(4) == {0: 5, 1: 18, 2: 1}
    assert "i=1" in t.pretty(4)


def test_errors():
    with pytest.raises(ValueError):
        get_triangle("z", 3)
    with pytest.raises(ValueError):
        get_triangle("t", 3, method="magic")
    with pytest.raises(ValueError):
        extract("t", 0)
    with pytest.raises(IndexError):
        get_triangle("t", 3).level(4)
