"""Spectral-parameter series: coefficients, termination, eigen equation."""

import itertools

import pytest

from maclab.algebra import FactoredRational, LaurentPolynomial, rational_eq
from maclab.baker import (
    BAContext,
    TerminationFailure,
    ba_vars,
    c_N_closed,
    c_N_closed_alt,
    c_N_recursive,
    f_N_series,
    specialize_f_to_P,
    verify_eigen_equation,
)
from maclab.macdonald import macdonald_P
from maclab.tableaux import ThetaMatrix


def mono(vars, **kw):
    e = [0] * len(vars)
    for k, v in kw.items():
        e[vars.index(k)] = v
    return LaurentPolynomial.monomial(vars, e)


def test_rank_one_is_one():
    assert c_N_recursive(ThetaMatrix(1), 1).is_one()
    assert c_N_closed(ThetaMatrix(1), 1).is_one()


def test_zero_matrix_is_one():
    for n in (2, 3, 4):
        assert c_N_recursive(ThetaMatrix(n), n).is_one()
        assert c_N_closed(ThetaMatrix(n), n).is_one()


def test_printed_rank_two_coefficient():
    # (s z2/z1;q)_1/(q z2/z1;q)_1 * (s;q)_1/(q;q)_1 * (q/s)
    v = ba_vars(2)
    one = LaurentPolynomial.one(v)
    printed = FactoredRational(v, 1, None, [
        (one - mono(v, s=1, z2=1, z1=-1), 1), (one - mono(v, q=1, z2=1, z1=-1), -1),
        (one - mono(v, s=1), 1), (one - mono(v, q=1), -1),
    ]) * FactoredRational.monomial(v, [1, -1, 0, 0])
    th = ThetaMatrix(2, {(1, 2): 1})
    assert rational_eq(c_N_recursive(th, 2), printed)
    assert rational_eq(c_N_closed(th, 2), printed)
    assert rational_eq(c_N_closed_alt(th, 2), printed)


def test_closed_equals_recursive_small():
    for n in (2, 3):
        pairs = [(i, j) for i in range(1, n) for j in range(i + 1, n + 1)]
        for vals in itertools.product(range(3), repeat=len(pairs)):
            th = ThetaMatrix(n, dict(zip(pairs, vals)))
            a = c_N_recursive(th, n)
            assert rational_eq(a, c_N_closed(th, n)), (n, vals)
            assert rational_eq(a, c_N_closed_alt(th, n)), (n, vals)


def test_series_truncation_zero():
    ctx = BAContext(3, 0)
    f = f_N_series(ctx)
    assert list(f.coeffs) == [(0, 0)]
    assert f.coeffs[(0, 0)].is_one()


def test_series_degree_one_coefficients():
    ctx = BAContext(2, 1)
    f = f_N_series(ctx)
    th = ThetaMatrix(2, {(1, 2): 1})
    assert rational_eq(f.coeffs[(1,)], c_N_closed(th, 2))
    # truncation counts total degree in the ratio variables, so the
    # (1,3) unit matrix (ratio-degree 2) enters at truncation 2
    f3 = f_N_series(BAContext(3, 1))
    assert set(f3.coeffs) == {(0, 0), (1, 0), (0, 1)}
    f3b = f_N_series(BAContext(3, 2))
    expected_11 = c_N_closed(ThetaMatrix(3, {(1, 3): 1}), 3) \
        + c_N_closed(ThetaMatrix(3, {(1, 2): 1, (2, 3): 1}), 3)
    assert rational_eq(f3b.coeffs[(1, 1)], expected_11)


def test_specialization_terminates_and_matches_P():
    for (lam, n) in [((), 2), ((1,), 2), ((2, 1), 3)]:
        ctx = BAContext(n, 1)
        S = specialize_f_to_P(lam, ctx)
        assert S.equals(macdonald_P(lam, n)), (lam, n)


def test_specialization_support_is_polytope():
    # every theta outside the polytope dies; checked inside the call
    ctx = BAContext(3, 1)
    specialize_f_to_P((2, 1), ctx, margin=3)


def test_eigen_equation_residuals_vanish():
    for (n, trunc) in [(2, 2), (2, 3), (3, 1), (3, 2)]:
        rep = verify_eigen_equation(BAContext(n, trunc))
        assert rep["all_zero"], (n, trunc, rep)
