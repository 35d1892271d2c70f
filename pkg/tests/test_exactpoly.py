import random

import pytest
from hypothesis import given, settings, strategies as st

from jacobigrammar.exactpoly import (
    Poly, RingMismatchError, UnknownVariableError, VariableSet, parse, substitute, to_text,
)

R = VariableSet(("x", "y", "z"))

coef = st.integers(-10**30, 10**30)
exps = st.tuples(*(st.integers(0, 4),) * 3)
polys = st.dictionaries(exps, coef, max_size=6).map(lambda t: Poly(R, t))


def _rand_poly(rng):
    return Poly(R, {tuple(rng.randrange(4) for _ in R): rng.randint(-50, 50)
                    for _ in range(rng.randrange(5))})


def test_ring_laws_sweep():
    # 10^4 seeded triples, cheap enough to run every time
    rng = random.Random(7)
    for _ in range(10_000):
        a, b, c = (_rand_poly(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a - a == Poly(R)


@settings(max_examples=300, deadline=None)
@given(polys, polys, polys)
def test_ring_laws_big_coefficients(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == Poly(R)


@settings(max_examples=300, deadline=None)
@given(polys, polys)
def test_leibniz_rule(a, b):
    for v in R:
        assert (a * b).diff(v) == a.diff(v) * b + a * b.diff(v)


@settings(max_examples=300, deadline=None)
@given(polys)
def test_text_round_trip(a):
    assert parse(to_text(a), R) == a


@settings(max_examples=200, deadline=None)
@given(polys)
def test_json_round_trip(a):
    assert Poly.from_json(R, a.to_json()) == a


def test_no_zero_terms_stored():
    p = Poly(R, {(1, 0, 0): 3, (0, 1, 0): 0})
    assert p.terms == {(1, 0, 0): 3}
    assert (p - p).is_zero()


def test_parse_basics():
    x, y, z = (Poly.var(R, v) for v in R)
    assert parse("(x+y)^2", R) == x * x + 2 * x * y + y * y
    assert parse("-3*x*y**2 + 7", R) == -3 * x * y * y + 7
    assert parse("2*(x - z)", R) == 2 * x - 2 * z


@pytest.mark.parametrize("bad", ["x+", "x*/y", "(x", "x^-1", "x^y"])
def test_parse_rejects(bad):
    with pytest.raises((ValueError, KeyError)):
        parse(bad, R)


def test_unknown_variable():
    with pytest.raises(UnknownVariableError):
        parse("w", R)


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        Poly.var(R, "x") + Poly.var(("x", "y"), "x")


def test_duplicate_ring_names():
    with pytest.raises(ValueError):
        VariableSet(("x", "x"))


def test_substitute_and_eval():
    pq = VariableSet(("p", "q"))
    a = parse("x^2*y + z", R)
    out = substitute(a, {"x": parse("p+q", pq), "y": parse("q", pq), "z": parse("p", pq)})
    assert out == parse("(p+q)^2*q + p", pq)
    assert a.eval({"x": 2, "y": 3, "z": 1j}) == 12 + 1j


def test_degree_homogeneous():
    assert parse("x*y*z + x^3", R).degree() == 3
    assert parse("x*y*z + x^3", R).is_homogeneous()
    assert not parse("x + 1", R).is_homogeneous()
