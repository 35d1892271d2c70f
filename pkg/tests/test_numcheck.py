import mpmath
import pytest

from jacobigrammar import numcheck
from jacobigrammar.numcheck import (
    CLOSED_FORMS, GROUPS, BranchCutError, IntegrationError, carlson_rf, compare,
    elliptic_numeric, ellip_f, eval_closed_form, expand_ids, jacobi, rk4_order_ratio,
)

# q=0 seeds, fixed-parameter specialisations and binomial sums
PASSING = ["lem:aa0", "th-aa.seed", "thCCth", "CO:caseC.p0", "CO:caseC.p1", "CO:caseC.q0",
           "CO:caseC.q1", "CO:caseD.q0", "CO:caseD.p1", "CO:caseD.q1", "th_TT.seed",
           "th_TT-corollary.q1", "th_TT-corollary.p1", "th_RR.seed", "binomial-sum.C",
           "binomial-sum.D"]
# general-q lifts that the EGF oracle contradicts (see the decisions ledger)
DISAGREE = ["th-aa", "thDDth", "th_TT", "th_RR"]


@pytest.mark.parametrize("u,m", [(0.3, 0.5), (1.2, 0.9), (0.7 + 0.2j, 0.3)])
def test_rk4_matches_mpmath(u, m):
    s, c, d = jacobi(u, mpmath.sqrt(m))
    for got, name in ((s, "sn"), (c, "cn"), (d, "dn")):
        want = complex(mpmath.ellipfun(name, u, m=m))
        assert abs(got - want) < 1e-11


@pytest.mark.parametrize("x,k", [(0.3, 0.5), (0.9, 0.99), (0.2 + 0.1j, 0.4j), (0.5, 1.5)])
def test_ellip_f_matches_mpmath(x, k):
    want = complex(mpmath.ellipf(mpmath.asin(x), k * k))
    assert abs(ellip_f(x, k) - want) < 1e-13


def test_carlson_special_value():
    # R_F(0,1,2)... avoid 0; R_F(1,1,1) = 1, R_F(x,x,x) = x^{-1/2}
    assert abs(carlson_rf(1, 1, 1) - 1) < 1e-15
    assert abs(carlson_rf(4, 4, 4) - 0.5) < 1e-15


def test_branch_cuts_raise():
    with pytest.raises(BranchCutError):
        ellip_f(1.5, 0.3)
    with pytest.raises(BranchCutError):
        numcheck._atan(2j)


def test_integration_guards():
    with pytest.raises(ValueError):
        elliptic_numeric(0.5, -1, -0.5, steps=10)
    with pytest.raises(IntegrationError):
        # sn has a pole at iK'(k); step straight through it
        elliptic_numeric(50j, -1, -0.25, steps=64)


def test_rk4_order():
    assert 12 <= rk4_order_ratio() <= 20


@pytest.mark.parametrize("cid", PASSING)
def test_closed_forms_agree(cid):
    rep = compare(cid)
    assert rep.passed, rep.counterexample
    assert rep.details["samples"] >= 5


@pytest.mark.parametrize("cid", DISAGREE)
def test_lifted_forms_report_counterexample(cid):
    rep = compare(cid)
    assert not rep.passed
    assert {"x", "p", "q", "rel_err"} <= set(rep.counterexample)
    assert rep.counterexample["rel_err"] > 1e-3


def test_seeded_determinism():
    a, b = compare("CO:caseC.q1", seed=3), compare("CO:caseC.q1", seed=3)
    assert a.details["worst_rel_err"] == b.details["worst_rel_err"]


def test_too_few_samples_fails_honestly():
    rep = compare("thCCth", samples=5, max_attempts=3)
    assert not rep.passed and "reason" in rep.counterexample


def test_registry_and_groups():
    assert set(expand_ids(["CO:caseC"])) == set(GROUPS["CO:caseC"])
    assert len(GROUPS["CO:caseC"]) == 4 and len(GROUPS["CO:caseD"]) == 3
    with pytest.raises(KeyError):
        eval_closed_form("nope", 0.1, 0.5, 0.5)
    with pytest.raises(ValueError):
        compare("thCCth", xmax=1.0)
    assert set(PASSING) | set(DISAGREE) == set(CLOSED_FORMS)


@pytest.mark.parametrize("cid", DISAGREE)
def test_lifted_forms_miss_initial_data(cid):
    # independent of the EGF: the even part must tend to +-1 as x -> 0
    _, even = CLOSED_FORMS[cid].evaluator(1e-12, 0.6, 0.2)
    assert abs(abs(even) - 1) > 0.1
