"""q-Pochhammer symbols and q-shift substitutions.

The finite symbol (p; q)_n = (1-p)(1-qp)...(1-q^{n-1}p) is kept as a
factored product; the infinite symbol is only ever used through its
truncated (q,t)-expansion, where all but finitely many factors are 1
modulo the truncation order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .algebra import Coef, FactoredRational, LaurentPolynomial
from .series import QTSeries, XSeries, expand

__all__ = ["QShift", "pochhammer", "pochhammer_inf", "apply_qshift",
           "UnknownVariable", "NonConvergent"]


class UnknownVariable(ValueError):
    pass


class NonConvergent(ArithmeticError):
    """The infinite product does not converge in the (q,t)-grading."""


@dataclass(frozen=True)
class QShift:
    """Substitution variable -> q^power * variable.

    Composition of shifts in the same variable adds powers; a shift is
    inverted by negating its power.
    """

    variable: str
    power: int

    def compose(self, other: "QShift") -> "QShift":
        if self.variable != other.variable:
            raise ValueError("cannot compose shifts in different variables")
        return QShift(self.variable, self.power + other.power)

    def inverse(self) -> "QShift":
        return QShift(self.variable, -self.power)


def pochhammer(p: FactoredRational | LaurentPolynomial, n: int,
               qvar: str = "q") -> FactoredRational:
    """Finite q-Pochhammer symbol (p; q)_n as a factored product.

    ``p`` must be a monomial (possibly with negative exponents); factors
    (1 - q^k p) with nonpositive exponents are normalized canonically, so
    e.g. (q^-1; q)_1 is stored as -q^-1 * (1 - q).
    """
    if n < 0:
        raise ValueError("Pochhammer length must be nonnegative")
    if isinstance(p, LaurentPolynomial):
        p = FactoredRational.from_poly(p)
    if not (p.is_monomial() or p.is_zero()):
        raise ValueError("Pochhammer base must be a monomial")
    vars = p.vars
    if p.is_zero():
        return FactoredRational.one(vars)
    iq = vars.index(qvar)
    one = LaurentPolynomial.one(vars)
    factors = []
    for k in range(n):
        e = tuple(x + (k if i == iq else 0) for i, x in enumerate(p.exps))
        factors.append((one - LaurentPolynomial.monomial(vars, e, p.coef), 1))
    return FactoredRational(vars, 1, None, factors)


def pochhammer_inf(p: FactoredRational | LaurentPolynomial, trunc: int,
                   qt: Sequence[str] = ("q", "t"), qvar: str = "q") -> QTSeries:
    """Truncated (q,t)-expansion of the infinite symbol (p; q)_infty.

    Requires the monomial p to have positive total (q,t)-degree (or be
    zero, in which case the product is 1); each factor (1 - q^k p) with
    k + deg(p) > trunc is 1 modulo the truncation order.
    """
    if isinstance(p, LaurentPolynomial):
        p = FactoredRational.from_poly(p)
    vars = p.vars
    if p.is_zero():
        return QTSeries.one(qt, tuple(v for v in vars if v not in qt), trunc)
    if not p.is_monomial():
        raise ValueError("Pochhammer base must be a monomial")
    deg = sum(p.exps[vars.index(v)] for v in qt)
    if deg <= 0:
        raise NonConvergent(
            f"(p;q)_infty with qt-degree {deg} base does not converge")
    k_max = max(0, trunc - deg + 1)
    finite = pochhammer(p, k_max, qvar=qvar)
    return expand(finite, trunc, qt=qt)


def apply_qshift(obj: Union[LaurentPolynomial, FactoredRational, XSeries],
                 shift: QShift, qvar: str = "q"):
    """Apply the substitution v -> q^power * v exactly, term by term.

    Acts on polynomials and factored rationals over a context containing
    both the shifted variable and ``q``.  For an :class:`XSeries` the
    ratio variables are positional: name them ``x1``, ``x2``, ... and
    each coefficient picks up q^{power * alpha_i}.
    """
    if isinstance(obj, (LaurentPolynomial, FactoredRational)):
        if shift.variable not in obj.vars:
            raise UnknownVariable(shift.variable)
        iq = obj.vars.index(qvar)
        e = [0] * len(obj.vars)
        e[obj.vars.index(shift.variable)] = 1
        e[iq] += shift.power
        return obj.substitute(shift.variable, 1, e)
    if isinstance(obj, XSeries):
        name = shift.variable
        if not (name.startswith("x") and name[1:].isdigit()):
            raise UnknownVariable(name)
        i = int(name[1:])
        if not 1 <= i <= obj.n:
            raise UnknownVariable(name)
        iq = obj.base_vars.index(qvar)

        def twist(k, c, i=i):
            e = [0] * len(obj.base_vars)
            e[iq] = shift.power * k[i - 1]
            return c * FactoredRational.monomial(obj.base_vars, e)

        return obj.map_coeffs(twist)
    raise TypeError(f"cannot q-shift {type(obj).__name__}")
