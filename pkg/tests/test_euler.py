"""Global characters: Weyl sums, stable limits, closed forms, shift operator."""

from fractions import Fraction

from maclab.algebra import FactoredRational, LaurentPolynomial, rational_eq
from maclab.euler import (
    F_poly,
    GLWeight,
    H0_closed,
    H_limit,
    W_poly,
    chi_bQ_closed,
    chi_bQ_localization,
    euler_char_global,
    frakD_K,
    h_equals_p,
    h_series,
    verify_cor_diff,
    weyl_invariance_check,
)
from maclab.series import expand

QT = ("q", "t")


def test_weight_coordinates():
    w = GLWeight((2, 1))
    assert w.components() == (3, 1, 0)
    assert w.partition() == (3, 2)
    assert w.is_dominant()
    assert not GLWeight((-1, 2)).is_dominant()
    assert w.pairing((1, 0)) == 2
    # simple coroot / fundamental weight duality
    for i in range(2):
        gamma = tuple(1 if k == i else 0 for k in range(2))
        for j in range(2):
            lv = tuple(1 if k == j else 0 for k in range(2))
            assert GLWeight(lv).pairing(gamma) == (1 if i == j else 0)


def test_shift_map():
    w = GLWeight((1, 1))
    assert w.shifted(1).lvec == (0, 1)
    assert w.shifted(2).lvec == (2, 0)
    assert w.shifted(3).lvec == (1, 2)


def test_euler_char_base_case():
    # degree 0, untwisted: the Weyl sum collapses to the t-factorial 1 + t
    val = euler_char_global((0,), GLWeight((0,)))
    lau = val.to_laurent()
    v = lau.vars
    assert lau == LaurentPolynomial(v, {(0, 0, 0): 1, (0, 1, 0): 1})


def test_euler_char_degree_one_is_t_polynomial():
    val = euler_char_global((1,), GLWeight((0,))).to_laurent()
    assert val == LaurentPolynomial(val.vars, {(0, b, 0): 1 for b in range(4)})


def test_weyl_invariance():
    assert weyl_invariance_check((1,), GLWeight((1,)))["passed"]
    assert weyl_invariance_check((1, 1), GLWeight((1, 0)))["passed"]


def test_H0_examples():
    h2 = H0_closed(2)
    one = LaurentPolynomial.one(h2.vars)
    t = LaurentPolynomial.var(h2.vars, "t")
    assert rational_eq(h2, FactoredRational(h2.vars, 1, None, [(one - t, -1)]))
    s3 = expand(H0_closed(3), 3)
    assert [s3.coeffs[(0, b)].constant_coef() for b in range(4)] == [1, 3, 7, 13]


def test_H0_equals_W_times_F():
    for n in range(2, 5):
        W = W_poly(n)
        F = F_poly(n, 8)
        WF = [sum(W[i] * F[k - i] for i in range(min(len(W), k + 1))) for k in range(9)]
        h0 = expand(H0_closed(n), 8)
        vals = [(h0.coeffs.get((0, b)).constant_coef() if (0, b) in h0.coeffs else 0)
                for b in range(9)]
        assert WF == vals, n


def test_F_poly_rank_two():
    # only the simple root contributes, with weight 2 per copy
    assert F_poly(2, 6) == [1, 0, 1, 0, 1, 0, 1]


def test_H_limit_matches_closed_forms():
    assert H_limit(GLWeight((0,)), 2) == expand(H0_closed(2), 2)
    w = GLWeight((1,))
    assert H_limit(w, 2) == h_series(w, 2)
    # (z1+z2)/(1-q) on the SL torus
    s = h_series(w, 2)
    zpart = s.coeffs[(0, 0)]
    assert zpart == LaurentPolynomial(s.coeff_vars, {(1,): 1, (-1,): 1})


def test_H_limit_vanishes_for_nondominant():
    assert H_limit(GLWeight((-1,)), 2).is_zero()
    assert H_limit(GLWeight((-1, 0)), 1).is_zero()


def test_H_limit_raises_on_unstable_schedule():
    import pytest
    from maclab.euler import NotStabilized

    with pytest.raises(NotStabilized):
        H_limit(GLWeight((0,)), 2, schedule=[(0,), (1,)])


def test_K_examples():
    one = LaurentPolynomial.one(QT)
    q = LaurentPolynomial.var(QT, "q")
    t = LaurentPolynomial.var(QT, "t")
    k2 = frakD_K(GLWeight((0,)), 2)
    assert rational_eq(k2, FactoredRational(QT, 1, None, [(one - q, 1), (one - t, -1)]))
    k1 = frakD_K(GLWeight((0,)), 1)
    num = one - LaurentPolynomial.monomial(QT, (-1, 2))
    assert rational_eq(k1, FactoredRational(QT, 1, None, [(num, 1), (one - t, -1)]))


def test_cordiff_hand_case():
    # N=2, weight 0: K_2(0) G(w1) = (z1+z2) G(0)
    rep = verify_cor_diff(GLWeight((0,)))
    assert rep["passed"]


def test_cordiff_exact_small():
    for lv in [(1,), (2,), (0, 0), (1, 0), (0, 1)]:
        assert verify_cor_diff(GLWeight(lv))["passed"], lv


def test_hp_closed_form_pieces():
    pref, part, P = h_equals_p(GLWeight((1,)))
    assert part == (1,)
    one = LaurentPolynomial.one(QT)
    q = LaurentPolynomial.var(QT, "q")
    t = LaurentPolynomial.var(QT, "t")
    assert rational_eq(pref, FactoredRational(QT, 1, None, [(one - t, 1), (one - q, -1)]))


def test_hp_series_cross_check():
    # N=2, weight 2: against the stable limit at order 3
    w = GLWeight((2,))
    assert H_limit(w, 3, schedule=[(3,), (4,), (5,)]) == h_series(w, 3)


def test_chi_bQ():
    for lv in [(0,), (1,)]:
        w = GLWeight(lv)
        assert chi_bQ_closed(w, 2) == chi_bQ_localization(w, 2), lv
    # the N=2 closed form has no extra infinite-product factor
    w0 = GLWeight((0,))
    assert chi_bQ_closed(w0, 2) == expand(H0_closed(2), 2)
    # N=3 untwisted: H0(3) * (t;q)_inf / (q t^2;q)_inf expanded
    w3 = GLWeight((0, 0))
    s = chi_bQ_closed(w3, 1)
    assert s.coeffs[(0, 0)].constant_coef() == 1
    assert s.coeffs[(0, 1)].constant_coef() == 2   # 3 (from H0) - 1 (from (t;q)_inf)
