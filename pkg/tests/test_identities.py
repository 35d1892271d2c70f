import pytest

from jacobigrammar import identities
from jacobigrammar.exactpoly import Poly
from jacobigrammar.identities import REGISTRY, N, P, Pt, _report, run_case


@pytest.mark.parametrize("cid", sorted(REGISTRY))
def test_case_passes_at_default_range(cid):
    rep = run_case(cid)
    assert rep.passed, rep.counterexample
    assert rep.range[1] >= 5


def test_small_polynomials():
    X = ("x",)
    assert N(3) == Poly(X, {(1,): 4, (2,): 10, (3,): 1})
    assert P(4) == Poly(X, {(0,): 8, (1,): 16})
    assert Pt(3) == Poly(X, {(0,): 1, (1,): 5})


def test_matching_convolution_records_reading():
    rep = run_case("eulerian-matching-convolution")
    assert rep.details["reading"] != "literal"
    assert rep.details["literal_counterexample"]["index"]


def test_report_falls_through_readings():
    bad = lambda: iter([("k", 1, 2)])  # noqa: E731
    good = lambda: iter([("k", 3, 3)])  # noqa: E731
    rep = _report("demo", 1, 3, [("literal", bad), ("shifted", good)])
    assert rep.passed and rep.details["reading"] == "shifted"
    rep = _report("demo", 1, 3, [("literal", bad)])
    assert not rep.passed and rep.counterexample == {"index": "k", "lhs": 1, "rhs": 2}


def test_negative_exponent_is_counterexample():
    def boom():
        identities._shifted({3: 1}, 1)
        yield
    rep = _report("demo", 1, 1, [("literal", boom)])
    assert not rep.passed and "error" in rep.counterexample


def test_unknown_case():
    with pytest.raises(KeyError):
        run_case("nope")


def test_range_override():
    assert run_case("conjecture", 6).range == (1, 6)
