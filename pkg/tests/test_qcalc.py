"""Finite and truncated-infinite Pochhammer symbols, q-shifts."""

import pytest

from maclab.algebra import FactoredRational, LaurentPolynomial, rational_eq
from maclab.qcalc import NonConvergent, QShift, apply_qshift, pochhammer, pochhammer_inf
from maclab.series import expand

V = ("q", "t")
ONE = LaurentPolynomial.one(V)
Q = LaurentPolynomial.var(V, "q")
T = LaurentPolynomial.var(V, "t")


def mono(qe, te):
    return FactoredRational.monomial(V, (qe, te))


def test_pochhammer_basics():
    p = mono(0, 1)
    assert pochhammer(p, 0).is_one()
    two = pochhammer(p, 2)
    expected = FactoredRational(V, 1, None, [(ONE - T, 1), (ONE - Q * T, 1)])
    assert rational_eq(two, expected)
    assert rational_eq(pochhammer(mono(1, 0), 1), FactoredRational.from_poly(ONE - Q))


def test_pochhammer_recursion():
    p = mono(1, 1)
    for n in range(5):
        left = pochhammer(p, n + 1)
        step = FactoredRational.from_poly(ONE - LaurentPolynomial.monomial(V, (n + 1, 1)))
        assert rational_eq(left, pochhammer(p, n) * step)


def test_pochhammer_negative_base_normalizes():
    # (q^-1; q)_1 = 1 - q^-1 = -q^-1 (1 - q)
    fr = pochhammer(mono(-1, 0), 1)
    assert fr.coef == -1
    assert fr.exps == (-1, 0)
    assert len(fr.factors) == 1


def test_pochhammer_inf_examples():
    # (q;q)_inf to order 2: 1 - q - q^2
    s = pochhammer_inf(mono(1, 0), 2)
    assert {k: p.constant_coef() for k, p in s.coeffs.items()} == {
        (0, 0): 1, (1, 0): -1, (2, 0): -1}
    # zero base: empty product
    assert pochhammer_inf(FactoredRational.zero(V), 3).coeffs == {(0, 0): LaurentPolynomial.one(())}
    # (qt;q)_inf to order 2: only the k=0 factor contributes
    s2 = pochhammer_inf(mono(1, 1), 2)
    assert {k: p.constant_coef() for k, p in s2.coeffs.items()} == {(0, 0): 1, (1, 1): -1}


def test_pochhammer_inf_matches_finite():
    p = mono(0, 1)
    order = 4
    inf = pochhammer_inf(p, order)
    fin = expand(pochhammer(p, order + 1), order)
    assert inf == fin


def test_pochhammer_inf_rejects_degree_zero():
    with pytest.raises(NonConvergent):
        pochhammer_inf(mono(0, 0), 2)
    with pytest.raises(NonConvergent):
        pochhammer_inf(mono(-1, 0), 2)


def test_qshift_action_and_composition():
    W = ("q", "s", "y1", "y2")
    y1 = LaurentPolynomial.var(W, "y1")
    y2 = LaurentPolynomial.var(W, "y2")
    shifted = apply_qshift(y1 + y2, QShift("y1", 1))
    assert shifted == LaurentPolynomial.monomial(W, (1, 0, 1, 0)) + y2
    s = QShift("y1", 2)
    assert s.compose(QShift("y1", -2)) == QShift("y1", 0)
    assert s.inverse() == QShift("y1", -2)


def test_qshift_is_invertible_ring_hom():
    W = ("q", "s", "y1", "y2")
    a = LaurentPolynomial.var(W, "y1") + LaurentPolynomial.var(W, "q")
    b = LaurentPolynomial.var(W, "y2") - LaurentPolynomial.one(W)
    s = QShift("y2", 3)
    assert apply_qshift(a * b, s) == apply_qshift(a, s) * apply_qshift(b, s)
    assert apply_qshift(apply_qshift(a * b, s), s.inverse()) == a * b


def test_qshift_on_x_series():
    from maclab.series import XSeries

    base = ("q", "t")
    # x1 x2: shifting x1 up by q and x2 down by q^-1 cancels
    s = XSeries(2, base, 2, {(1, 1): FactoredRational.one(base)})
    up = apply_qshift(s, QShift("x1", 1))
    down = apply_qshift(up, QShift("x2", -1))
    assert down.coeffs == s.coeffs
    # a lone x1 picks up one power of q
    s1 = XSeries(2, base, 2, {(1, 0): FactoredRational.one(base)})
    shifted = apply_qshift(s1, QShift("x1", -1))
    assert shifted.coeffs[(1, 0)] == FactoredRational.monomial(base, (-1, 0))
