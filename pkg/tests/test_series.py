import mpmath
import pytest

from jacobigrammar.exactpoly import parse
from jacobigrammar.series import (
    CLASSICAL_RING, TWO_PARAM_RING, FormalPowerSeries, SeriesError, j_coefficients,
    j_polynomials, jacobi_classical, jacobi_classical_direct, jacobi_two_param,
    verify_convolution, verify_dumont_gf,
)
from jacobigrammar.triangles import get_triangle

K = CLASSICAL_RING


def k(text):
    return parse(text, K)


def test_low_order_classical_coefficients():
    sn, cn, dn = jacobi_classical(5)
    assert sn[3] == k("-(1+k2)") and sn[5] == k("1+14*k2+k2^2")
    assert cn[2] == k("-1") and cn[4] == k("1+4*k2")
    assert dn[2] == k("-k2") and dn[4] == k("k2*(4+k2)")


def test_specialization_matches_direct_integration():
    assert jacobi_classical(14) == jacobi_classical_direct(14)


def test_parities():
    sn, cn, dn = jacobi_two_param(12)
    assert sn.is_odd() and cn.is_even() and dn.is_even()


def test_pythagorean_identities():
    sn, cn, dn = jacobi_two_param(12)
    a2 = parse("a2", TWO_PARAM_RING)
    b2 = parse("b2", TWO_PARAM_RING)
    one = FormalPowerSeries.constant(TWO_PARAM_RING, 1, 12)
    # cn^2 - a2 sn^2 = 1 and dn^2 - b2 sn^2 = 1
    zero = FormalPowerSeries.constant(TWO_PARAM_RING, 0, 12)
    assert cn * cn - (sn * sn).scale(a2) - one == zero
    assert dn * dn - (sn * sn).scale(b2) - one == zero


def test_against_mpmath():
    # independent numeric oracle: truncated series vs mpmath's ellipfun
    order = 24
    sn, cn, dn = jacobi_classical(order)
    u, m = 0.3, 0.6
    for f, name in ((sn, "sn"), (cn, "cn"), (dn, "dn")):
        assert f.evaluate(u, {"k2": m}).real == pytest.approx(float(mpmath.ellipfun(name, u, m=m)), abs=1e-15)


def test_j_polynomials():
    J = j_polynomials(6)
    assert J[0] == k("1") and J[1] == k("1") and J[2] == k("1")
    assert J[3] == k("1+k2") and J[4] == k("1+4*k2") and J[5] == k("1+14*k2+k2^2")
    assert j_coefficients(5)[(5, 2)] == 14


def test_j_matches_t():
    t = get_triangle("t", 12)
    J = j_coefficients(12)
    for n in range(1, 13):
        for i in range(n // 2 + 1):
            assert J.get((n, 2 * i), 0) == t.get(n, n // 2 - i, 0)


def test_reciprocal_and_errors():
    sn, cn, _ = jacobi_classical(10)
    one = FormalPowerSeries.constant(K, 1, 10)
    assert cn * cn.reciprocal() == one
    with pytest.raises(SeriesError):
        sn.reciprocal()


def test_dumont_generating_function():
    assert verify_dumont_gf(8).passed


def test_convolutions():
    reps = verify_convolution(5)
    assert [r.id for r in reps] == ["j-convolution.odd", "j-convolution.even",
                                    "t-convolution.odd", "t-convolution.even"]
    assert all(r.passed for r in reps), [r.counterexample for r in reps]
