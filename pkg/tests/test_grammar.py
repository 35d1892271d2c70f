from math import comb

import pytest

from jacobigrammar import permstats
from jacobigrammar.exactpoly import Poly, RingMismatchError, parse
from jacobigrammar.grammar import (
    EXTENDED_RING, SCHETT_RING, Grammar, OperatorSpec, derive, eulerian_sanity, extended_schett,
    iterate, iterate_all, leibniz_power, schett,
)

G = schett()
X = Poly.var(SCHETT_RING, "x")
Y = Poly.var(SCHETT_RING, "y")


def xyz(text):
    return parse(text, SCHETT_RING)


def wxyz(text):
    return parse(text, EXTENDED_RING)


def test_first_derivatives():
    assert derive(G, X) == xyz("y*z")
    assert iterate(OperatorSpec("D", G, X), 2) == xyz("x*y^2 + x*z^2")


@pytest.mark.parametrize("op,seed,levels", [
    ("xD", "x", ["x*y*z", "x*y^2*z^2 + x^3*y^2 + x^3*z^2"]),
    ("Dx", "x", ["2*x*y*z", "4*x*y^2*z^2 + 2*x^3*y^2 + 2*x^3*z^2"]),
    ("Dx", "y", ["y^2*z + x^2*z", "y^3*z^2 + 5*x^2*y*z^2 + x^2*y^3 + x^4*y"]),
    ("xD", "y", ["x^2*z", "2*x^2*y*z^2 + x^4*y"]),
])
def test_printed_small_iterates(op, seed, levels):
    seq = iterate_all(OperatorSpec(op, G, xyz(seed)), 2)
    assert seq[1:] == [xyz(t) for t in levels]


def test_extended_grammar_examples():
    g = extended_schett()
    w = Poly.var(EXTENDED_RING, "w")
    dw = iterate_all(OperatorSpec("D", g, w), 4)
    assert dw[1] == wxyz("w*x")
    assert dw[2] == wxyz("w*(x^2+y*z)")
    assert dw[3] == wxyz("w*(x^3+x*z^2+3*x*y*z+x*y^2)")
    assert dw[4] == wxyz("w*(x^4+10*x^2*y*z+4*x^2*z^2+4*x^2*y^2+3*y^2*z^2+y^3*z+y*z^3)")
    dw2 = iterate_all(OperatorSpec("D", g, w * w), 3)
    assert dw2[1:] == [wxyz("2*w^2*x"), wxyz("w^2*(4*x^2+2*y*z)"),
                       wxyz("w^2*(8*x^3+12*x*y*z+2*x*z^2+2*x*y^2)")]


def test_parity_and_degree_pattern():
    seq = iterate_all(OperatorSpec("D", G, X), 14)
    for n, p in enumerate(seq):
        assert p.is_homogeneous() and p.degree() == n + 1
        for (i, j, k) in p.terms:
            if n % 2 == 0:
                assert i % 2 == 1 and j % 2 == 0 and k % 2 == 0
            else:
                assert i % 2 == 0 and j % 2 == 1 and k % 2 == 1


def test_coefficient_sum_is_factorial():
    # D^n(x) at x=y=z=1 counts all permutations of [n]
    from math import factorial
    seq = iterate_all(OperatorSpec("D", G, X), 10)
    for n, p in enumerate(seq):
        assert sum(p.terms.values()) == factorial(n)


def test_eulerian_grammar_matches_descents():
    for n in range(1, 8):
        poly = eulerian_sanity(n)
        table = permstats.descents(n)
        # w^{n-k} x^{k} ... each term w^a x^b with a+b = n+1, a = #descents+1
        got = {a - 1: c for (a, b), c in poly.terms.items()}
        assert got == dict(table.counts)


def test_leibniz_power_matches_direct():
    for n in range(6):
        direct = iterate(OperatorSpec("D", G, X * Y), n)
        assert leibniz_power(G, X, Y, n) == direct


def test_from_string_infers_ring():
    g = Grammar.from_string("a->a*b; b->a*b")
    assert tuple(g.ring) == ("a", "b")
    assert str(g) == "a->a*b; b->a*b"


@pytest.mark.parametrize("text", ["x=y", "x->y*"])
def test_bad_grammar(text):
    with pytest.raises((ValueError, KeyError)):
        Grammar.from_string(text)


def test_operator_validation():
    with pytest.raises(ValueError):
        OperatorSpec("DD", G, X)
    with pytest.raises(RingMismatchError):
        OperatorSpec("D", G, Poly.var(("x",), "x"))
    with pytest.raises(ValueError):
        iterate_all(OperatorSpec("D", G, X), -1)
