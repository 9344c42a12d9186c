"""Exact sparse Laurent-polynomial and factored-rational arithmetic.

Everything in this package is built on two value types:

* :class:`LaurentPolynomial` -- a sparse Laurent polynomial over a fixed,
  ordered tuple of variable names, with exact rational coefficients
  (plain ``int`` where the denominator is 1, ``fractions.Fraction``
  otherwise).  No floating point anywhere.

* :class:`FactoredRational` -- a unit monomial times a multiset of
  polynomial factors with integer multiplicities.  Products of binomials
  such as q-Pochhammer symbols stay factored; nothing is ever reduced by
  a multivariate gcd.  Equality of values is decided by cancelling common
  factors and cross-multiplying the rest (:func:`rational_eq`).

Values are immutable after construction and safe to share across worker
processes.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Coef = Union[int, Fraction]

__all__ = [
    "LaurentPolynomial",
    "FactoredRational",
    "rational_eq",
    "ExactDivisionError",
    "DenominatorNotUnit",
]


class ExactDivisionError(ArithmeticError):
    """Raised when a division that must be exact leaves a remainder."""


class DenominatorNotUnit(ArithmeticError):
    """Raised when a denominator factor has no invertible leading part
    for the requested series expansion."""


def _norm_coef(c: Coef) -> Coef:
    """Collapse Fractions with denominator 1 to int (fast arithmetic path)."""
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _coef_pow(c: Coef, e: int) -> Coef:
    if e >= 0:
        return _norm_coef(c ** e)
    return _norm_coef(Fraction(c) ** e)


def _coef_str(c: Coef) -> str:
    return str(c)


class LaurentPolynomial:
    """Sparse Laurent polynomial over an ordered variable context.

    ``terms`` maps exponent tuples (one integer per context variable,
    negative exponents allowed) to nonzero coefficients.  Binary
    operations require both operands to share the same context.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple, Coef] | None = None):
        self.vars = tuple(vars)
        t = {}
        if terms:
            for e, c in terms.items():
                c = _norm_coef(c)
                if c:
                    t[tuple(e)] = c
        self.terms = t

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, vars: Sequence[str]) -> "LaurentPolynomial":
        return cls(vars)

    @classmethod
    def const(cls, vars: Sequence[str], c: Coef) -> "LaurentPolynomial":
        p = cls(vars)
        c = _norm_coef(c)
        if c:
            p.terms[(0,) * len(p.vars)] = c
        return p

    @classmethod
    def one(cls, vars: Sequence[str]) -> "LaurentPolynomial":
        return cls.const(vars, 1)

    @classmethod
    def monomial(cls, vars: Sequence[str], exps: Sequence[int], c: Coef = 1) -> "LaurentPolynomial":
        p = cls(vars)
        c = _norm_coef(c)
        if c:
            p.terms[tuple(exps)] = c
        return p

    @classmethod
    def var(cls, vars: Sequence[str], name: str, power: int = 1) -> "LaurentPolynomial":
        i = tuple(vars).index(name)
        e = [0] * len(vars)
        e[i] = power
        return cls.monomial(vars, e)

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        z = (0,) * len(self.vars)
        return len(self.terms) == 1 and self.terms.get(z) == 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_coef(self) -> Coef:
        return self.terms.get((0,) * len(self.vars), 0)

    # -- arithmetic ----------------------------------------------------

    def _check(self, other: "LaurentPolynomial"):
        if self.vars != other.vars:
            raise ValueError(f"variable contexts differ: {self.vars} vs {other.vars}")

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = _norm_coef(s)
            elif e in t:
                del t[e]
        out = LaurentPolynomial(self.vars)
        out.terms = t
        return out

    def __neg__(self) -> "LaurentPolynomial":
        out = LaurentPolynomial(self.vars)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e, 0) - c
            if s:
                t[e] = _norm_coef(s)
            elif e in t:
                del t[e]
        out = LaurentPolynomial(self.vars)
        out.terms = t
        return out

    def __mul__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        t: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = t.get(e, 0) + ca * cb
                if s:
                    t[e] = s
                elif e in t:
                    del t[e]
        out = LaurentPolynomial(self.vars)
        out.terms = {e: _norm_coef(c) for e, c in t.items()}
        return out

    def scale(self, c: Coef) -> "LaurentPolynomial":
        c = _norm_coef(c)
        out = LaurentPolynomial(self.vars)
        if c:
            out.terms = {e: _norm_coef(v * c) for e, v in self.terms.items()}
        return out

    def shift(self, exps: Sequence[int]) -> "LaurentPolynomial":
        """Multiply by the monomial with the given exponent vector."""
        d = tuple(exps)
        out = LaurentPolynomial(self.vars)
        out.terms = {tuple(x + y for x, y in zip(e, d)): c for e, c in self.terms.items()}
        return out

    def __pow__(self, n: int) -> "LaurentPolynomial":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = LaurentPolynomial.one(self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentPolynomial)
            and self.vars == other.vars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- structure -----------------------------------------------------

    def degree(self, subset: Iterable[str] | None = None) -> int:
        """Max total degree over the given variables (all by default); 0 for the zero polynomial."""
        if not self.terms:
            return 0
        idx = self._subset_idx(subset)
        return max(sum(e[i] for i in idx) for e in self.terms)

    def valuation(self, subset: Iterable[str] | None = None) -> int:
        """Min total degree over the given variables; 0 for the zero polynomial."""
        if not self.terms:
            return 0
        idx = self._subset_idx(subset)
        return min(sum(e[i] for i in idx) for e in self.terms)

    def _subset_idx(self, subset):
        if subset is None:
            return range(len(self.vars))
        return [self.vars.index(v) for v in subset]

    def min_exponents(self) -> tuple:
        """Componentwise minimum exponent vector over all terms."""
        if not self.terms:
            return (0,) * len(self.vars)
        mins = None
        for e in self.terms:
            mins = e if mins is None else tuple(min(x, y) for x, y in zip(mins, e))
        return mins

    # -- substitution / evaluation --------------------------------------

    def transform(
        self,
        new_vars: Sequence[str],
        mapping: Mapping[str, tuple],
    ) -> "LaurentPolynomial":
        """Monomial substitution into a (possibly different) context.

        ``mapping[v] = (coef, exps)`` sends variable ``v`` to
        ``coef * new_vars^exps``.  Unmapped variables must exist in the
        new context and map to themselves.
        """
        new_vars = tuple(new_vars)
        n_new = len(new_vars)
        images = []
        for i, v in enumerate(self.vars):
            if v in mapping:
                coef, exps = mapping[v]
                images.append((_norm_coef(coef), tuple(exps)))
            else:
                j = new_vars.index(v)
                e = [0] * n_new
                e[j] = 1
                images.append((1, tuple(e)))
        t: dict = {}
        for e, c in self.terms.items():
            exps = [0] * n_new
            coef = c
            for i, ei in enumerate(e):
                if not ei:
                    continue
                ci, mi = images[i]
                if ci != 1:
                    coef = coef * _coef_pow(ci, ei)
                for j, mj in enumerate(mi):
                    if mj:
                        exps[j] += mj * ei
            key = tuple(exps)
            s = t.get(key, 0) + coef
            if s:
                t[key] = _norm_coef(s)
            elif key in t:
                del t[key]
        out = LaurentPolynomial(new_vars)
        out.terms = t
        return out

    def substitute(self, var: str, coef: Coef, exps: Sequence[int]) -> "LaurentPolynomial":
        """Substitute ``var -> coef * self.vars^exps`` within the same context."""
        return self.transform(self.vars, {var: (coef, tuple(exps))})

    def evaluate(self, point: Mapping[str, Coef]) -> Coef:
        missing = [v for v in self.vars if v not in point]
        if missing:
            raise ValueError(f"no value for variables {missing}")
        vals = [point[v] for v in self.vars]
        acc: Coef = 0
        for e, c in self.terms.items():
            term = c
            for x, ei in zip(vals, e):
                if ei:
                    term = term * _coef_pow(x, ei)
            acc = acc + term
        return _norm_coef(acc)

    # -- division --------------------------------------------------------

    def divide_exact(self, divisor: "LaurentPolynomial") -> "LaurentPolynomial":
        """Exact division; raises :class:`ExactDivisionError` on remainder.

        Works for Laurent operands: both sides are shifted to honest
        polynomials, divided by cancelling graded-lex leading terms, and
        the quotient is shifted back.  Binomial divisors (the only kind
        produced by the Pochhammer calculus) take a near-linear path.
        """
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return self
        if len(divisor.terms) == 1:
            (e, c), = divisor.terms.items()
            inv = _norm_coef(Fraction(1) / c)
            return self.shift(tuple(-x for x in e)).scale(inv)
        if len(divisor.terms) == 2:
            return self._divide_binomial(divisor)
        sh_a = self.min_exponents()
        sh_d = divisor.min_exponents()
        a = {tuple(x - y for x, y in zip(e, sh_a)): c for e, c in self.terms.items()}
        d = {tuple(x - y for x, y in zip(e, sh_d)): c for e, c in divisor.terms.items()}
        lt_d = max(d, key=lambda e: (sum(e), e))
        cd = d[lt_d]
        q: dict = {}
        # graded-lex leading terms strictly decrease over a finite set of
        # monomials, so this terminates; inexactness surfaces as a
        # non-divisible leading term.
        while a:
            lt_a = max(a, key=lambda e: (sum(e), e))
            e_q = tuple(x - y for x, y in zip(lt_a, lt_d))
            if any(x < 0 for x in e_q):
                raise ExactDivisionError("leading term not divisible")
            c_q = _norm_coef(Fraction(a[lt_a]) / cd)
            q[e_q] = c_q
            for e, c in d.items():
                key = tuple(x + y for x, y in zip(e, e_q))
                s = a.get(key, 0) - c_q * c
                if s:
                    a[key] = _norm_coef(s)
                elif key in a:
                    del a[key]
        shift = tuple(x - y for x, y in zip(sh_a, sh_d))
        out = LaurentPolynomial(self.vars)
        out.terms = {tuple(x + y for x, y in zip(e, shift)): c for e, c in q.items()}
        return out

    def _divide_binomial(self, divisor: "LaurentPolynomial") -> "LaurentPolynomial":
        """Division by c_a x^{e_a} + c_b x^{e_b}: anchor on the term that
        is smaller for the functional phi(v) = <v, e_b - e_a>, so the
        cancellation recursion walks strictly upward in phi."""
        import heapq

        (ea, ca), (eb, cb) = divisor.terms.items()
        e = tuple(x - y for x, y in zip(eb, ea))
        step = sum(x * x for x in e)

        def phi(k):
            return sum(x * y for x, y in zip(k, e))

        inv = Fraction(1) / ca
        d = _norm_coef(cb * inv)
        work = {tuple(x - y for x, y in zip(k, ea)): _norm_coef(c * inv)
                for k, c in self.terms.items()}
        phis = [phi(k) for k in work]
        span = (max(phis) - min(phis)) // step + 1
        max_pops = len(work) * (span + 2) + 16
        heap = [(phi(k), k) for k in work]
        heapq.heapify(heap)
        quotient: dict = {}
        while work:
            if max_pops <= 0:
                raise ExactDivisionError("binomial division leaves a remainder")
            max_pops -= 1
            f, k = heapq.heappop(heap)
            c = work.pop(k, None)
            if c is None:
                continue
            quotient[k] = c
            k2 = tuple(x + y for x, y in zip(k, e))
            prev = work.get(k2)
            v = _norm_coef((prev if prev is not None else 0) - c * d)
            if v:
                work[k2] = v
                if prev is None:
                    heapq.heappush(heap, (f + step, k2))
            elif prev is not None:
                del work[k2]
        out = LaurentPolynomial(self.vars)
        out.terms = quotient
        return out

    # -- serialization ----------------------------------------------------

    def sorted_terms(self):
        """Terms in graded-lex order of the exponent vector (deterministic)."""
        return sorted(self.terms.items(), key=lambda item: (sum(item[0]), item[0]))

    def canonical_str(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"{v}^{k}" if k != 1 else v
                for v, k in zip(self.vars, e)
                if k
            )
            if mono:
                parts.append(f"({_coef_str(c)})*{mono}")
            else:
                parts.append(f"({_coef_str(c)})")
        return " + ".join(parts)

    def to_json_obj(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [
                {"exp": list(e), "coef": _coef_str(c)} for e, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "LaurentPolynomial":
        p = cls(tuple(obj["vars"]))
        for t in obj["terms"]:
            p.terms[tuple(t["exp"])] = _norm_coef(Fraction(t["coef"]))
        return p

    def __repr__(self):
        return f"LaurentPolynomial({self.canonical_str()})"


def _poly_sort_key(p: LaurentPolynomial):
    return tuple(
        (sum(e), e, (c.numerator, c.denominator) if isinstance(c, Fraction) else (c, 1))
        for e, c in p.sorted_terms()
    )


class FactoredRational:
    """A unit monomial times a product of polynomial factors with integer
    multiplicities (negative multiplicities are denominator factors).

    Factors are canonically normalized: the componentwise-minimum
    monomial and the coefficient of the graded-lex smallest term are
    pulled into the unit, so equal factors always merge.  The zero value
    is represented by ``coef == 0``.
    """

    __slots__ = ("vars", "coef", "exps", "factors")

    def __init__(
        self,
        vars: Sequence[str],
        coef: Coef = 1,
        exps: Sequence[int] | None = None,
        factors: Iterable[tuple] = (),
    ):
        self.vars = tuple(vars)
        coef = _norm_coef(coef)
        exps = tuple(exps) if exps is not None else (0,) * len(self.vars)
        merged: dict = {}
        if coef:
            for poly, mult in factors:
                if mult == 0:
                    continue
                u_c, u_e, canon = _canonical_factor(poly)
                if u_c == 0:
                    if mult < 0:
                        raise ZeroDivisionError("zero polynomial in denominator")
                    coef = 0
                    break
                coef = _norm_coef(coef * _coef_pow(u_c, mult))
                exps = tuple(x + mult * y for x, y in zip(exps, u_e))
                if canon is not None:
                    key = _poly_sort_key(canon)
                    if key in merged:
                        merged[key] = (canon, merged[key][1] + mult)
                    else:
                        merged[key] = (canon, mult)
        if not coef:
            self.coef = 0
            self.exps = (0,) * len(self.vars)
            self.factors = ()
            return
        self.coef = coef
        self.exps = exps
        self.factors = tuple(
            (p, m) for _, (p, m) in sorted(merged.items()) if m != 0
        )

    # -- constructors ------------------------------------------------------

    @classmethod
    def one(cls, vars: Sequence[str]) -> "FactoredRational":
        return cls(vars)

    @classmethod
    def zero(cls, vars: Sequence[str]) -> "FactoredRational":
        return cls(vars, 0)

    @classmethod
    def const(cls, vars: Sequence[str], c: Coef) -> "FactoredRational":
        return cls(vars, c)

    @classmethod
    def monomial(cls, vars: Sequence[str], exps: Sequence[int], c: Coef = 1) -> "FactoredRational":
        return cls(vars, c, exps)

    @classmethod
    def from_poly(cls, p: LaurentPolynomial) -> "FactoredRational":
        return cls(p.vars, 1, None, [(p, 1)])

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.coef == 0

    def is_monomial(self) -> bool:
        return not self.factors and self.coef != 0

    def is_one(self) -> bool:
        return self.coef == 1 and not self.factors and not any(self.exps)

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other: "FactoredRational"):
        if self.vars != other.vars:
            raise ValueError("variable contexts differ")

    def __mul__(self, other: "FactoredRational") -> "FactoredRational":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return FactoredRational.zero(self.vars)
        return FactoredRational(
            self.vars,
            self.coef * other.coef,
            tuple(x + y for x, y in zip(self.exps, other.exps)),
            tuple(self.factors) + tuple(other.factors),
        )

    def inverse(self) -> "FactoredRational":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return FactoredRational(
            self.vars,
            _norm_coef(Fraction(1, 1) / self.coef),
            tuple(-x for x in self.exps),
            tuple((p, -m) for p, m in self.factors),
        )

    def __truediv__(self, other: "FactoredRational") -> "FactoredRational":
        return self * other.inverse()

    def __pow__(self, n: int) -> "FactoredRational":
        if self.is_zero():
            if n <= 0:
                raise ZeroDivisionError("0 ** nonpositive")
            return self
        return FactoredRational(
            self.vars,
            _coef_pow(self.coef, n),
            tuple(n * x for x in self.exps),
            tuple((p, n * m) for p, m in self.factors),
        )

    def __neg__(self) -> "FactoredRational":
        if self.is_zero():
            return self
        return FactoredRational(self.vars, -self.coef, self.exps, self.factors)

    def scale(self, c: Coef) -> "FactoredRational":
        if self.is_zero() or c == 0:
            return FactoredRational.zero(self.vars)
        return FactoredRational(self.vars, self.coef * c, self.exps, self.factors)

    def __add__(self, other: "FactoredRational") -> "FactoredRational":
        self._check(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        # common denominator by canonical-factor multiset
        a_f = {_poly_sort_key(p): (p, m) for p, m in self.factors}
        b_f = {_poly_sort_key(p): (p, m) for p, m in other.factors}
        den: dict = {}
        for key in set(a_f) | set(b_f):
            ma = a_f.get(key, (None, 0))[1]
            mb = b_f.get(key, (None, 0))[1]
            m = max(-ma, -mb, 0)
            if m:
                den[key] = ((a_f.get(key) or b_f.get(key))[0], m)
        # numerators: unit * positive part * (den / own denominator)
        num_a = self._numerator_against(den, a_f)
        num_b = other._numerator_against(den, b_f)
        # unit monomials: pull out the common part, keep the rest in the sum
        e_min = tuple(min(x, y) for x, y in zip(self.exps, other.exps))
        pa = LaurentPolynomial.monomial(self.vars, tuple(x - y for x, y in zip(self.exps, e_min)), self.coef)
        pb = LaurentPolynomial.monomial(self.vars, tuple(x - y for x, y in zip(other.exps, e_min)), other.coef)
        total = pa * num_a + pb * num_b
        if total.is_zero():
            return FactoredRational.zero(self.vars)
        factors = [(p, -m) for p, m in den.values()]
        factors.append((total, 1))
        return FactoredRational(self.vars, 1, e_min, factors)

    def _numerator_against(self, den: dict, own: dict) -> LaurentPolynomial:
        out = LaurentPolynomial.one(self.vars)
        for key, (p, m) in own.items():
            if m > 0:
                out = out * p ** m
        for key, (p, m) in den.items():
            own_m = own.get(key, (None, 0))[1]
            extra = m - max(-own_m, 0)
            if extra:
                out = out * p ** extra
        return out

    def __sub__(self, other: "FactoredRational") -> "FactoredRational":
        return self + (-other)

    def __eq__(self, other) -> bool:
        """Structural equality of the canonical factored form (not value
        equality; use :func:`rational_eq` for that)."""
        return (
            isinstance(other, FactoredRational)
            and self.vars == other.vars
            and self.coef == other.coef
            and self.exps == other.exps
            and self.factors == other.factors
        )

    def __hash__(self):
        return hash((self.vars, self.coef, self.exps, len(self.factors)))

    # -- conversions -----------------------------------------------------------

    def num_den(self) -> tuple[LaurentPolynomial, LaurentPolynomial]:
        """Expand into (numerator, denominator); unit goes to the numerator,
        so the numerator may be a Laurent polynomial."""
        num = LaurentPolynomial.monomial(self.vars, self.exps, self.coef)
        den = LaurentPolynomial.one(self.vars)
        for p, m in self.factors:
            if m > 0:
                num = num * p ** m
            else:
                den = den * p ** (-m)
        return num, den

    def to_laurent(self) -> LaurentPolynomial:
        """Exact conversion to a Laurent polynomial (the denominator must
        divide the numerator exactly)."""
        num = LaurentPolynomial.monomial(self.vars, self.exps, self.coef)
        for p, m in self.factors:
            if m > 0:
                num = num * p ** m
        for p, m in self.factors:
            if m < 0:
                for _ in range(-m):
                    num = num.divide_exact(p)
        return num

    def transform(self, new_vars: Sequence[str], mapping: Mapping[str, tuple]) -> "FactoredRational":
        """Monomial substitution (see :meth:`LaurentPolynomial.transform`).

        A numerator factor may collapse to zero (making the value zero); a
        denominator factor collapsing to zero raises ``ZeroDivisionError``.
        """
        new_vars = tuple(new_vars)
        if self.is_zero():
            return FactoredRational.zero(new_vars)
        unit = LaurentPolynomial.monomial(self.vars, self.exps, self.coef).transform(new_vars, mapping)
        (e, c), = unit.terms.items()
        factors = []
        for p, m in self.factors:
            q = p.transform(new_vars, mapping)
            if q.is_zero():
                if m < 0:
                    raise ZeroDivisionError("denominator factor vanished under substitution")
                return FactoredRational.zero(new_vars)
            factors.append((q, m))
        return FactoredRational(new_vars, c, e, factors)

    def substitute(self, var: str, coef: Coef, exps: Sequence[int]) -> "FactoredRational":
        return self.transform(self.vars, {var: (coef, tuple(exps))})

    def evaluate(self, point: Mapping[str, Coef]) -> Coef:
        if self.is_zero():
            return 0
        acc = self.coef
        for v, e in zip(self.vars, self.exps):
            if e:
                acc = acc * _coef_pow(point[v], e)
        for p, m in self.factors:
            val = p.evaluate(point)
            if val == 0:
                if m < 0:
                    raise ZeroDivisionError(f"denominator factor vanishes at {point}")
                return 0
            acc = acc * _coef_pow(val, m)
        return _norm_coef(acc)

    # -- valuation ---------------------------------------------------------------

    def valuation_lb(self, subset: Sequence[str]) -> int:
        """Lower bound for the total degree in ``subset`` of the leading
        term of the value (exact when every factor's minimum is attained)."""
        if self.is_zero():
            raise ValueError("valuation of zero")
        idx = [self.vars.index(v) for v in subset]
        val = sum(self.exps[i] for i in idx)
        for p, m in self.factors:
            val += m * p.valuation(subset)
        return val

    # -- serialization --------------------------------------------------------------

    def canonical_str(self) -> str:
        if self.is_zero():
            return "0"
        unit = LaurentPolynomial.monomial(self.vars, self.exps, self.coef)
        parts = [unit.canonical_str()]
        for p, m in self.factors:
            parts.append(f"({p.canonical_str()})^{m}")
        return " * ".join(parts)

    def to_json_obj(self) -> dict:
        num, den = self.num_den()
        return {"num": num.to_json_obj(), "den": den.to_json_obj()}

    def __repr__(self):
        return f"FactoredRational({self.canonical_str()})"


def _canonical_factor(p: LaurentPolynomial):
    """Normalize a polynomial factor.

    Returns ``(unit_coef, unit_exps, canonical)`` with
    ``p == unit_coef * x^unit_exps * canonical``; ``canonical`` is None
    when p is a monomial (fully absorbed into the unit), and
    ``unit_coef == 0`` when p is zero.
    """
    if p.is_zero():
        return 0, (0,) * len(p.vars), None
    if len(p.terms) == 1:
        (e, c), = p.terms.items()
        return c, e, None
    mins = p.min_exponents()
    shifted = {tuple(x - y for x, y in zip(e, mins)): c for e, c in p.terms.items()}
    lead = min(shifted, key=lambda e: (sum(e), e))
    c0 = shifted[lead]
    canon = LaurentPolynomial(p.vars)
    if c0 == 1:
        canon.terms = shifted
    else:
        inv = Fraction(1, 1) / c0
        canon.terms = {e: _norm_coef(c * inv) for e, c in shifted.items()}
    return c0, mins, canon


def rational_eq(a: FactoredRational, b: FactoredRational) -> bool:
    """Certified value equality of two factored rationals.

    Common canonical factors are cancelled first; the remaining parts are
    cross-multiplied and compared as fully expanded Laurent polynomials.
    """
    if a.vars != b.vars:
        raise ValueError("variable contexts differ")
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    a_f = {_poly_sort_key(p): (p, m) for p, m in a.factors}
    b_f = {_poly_sort_key(p): (p, m) for p, m in b.factors}
    rem_a: list = []
    rem_b: list = []
    for key in set(a_f) | set(b_f):
        p = (a_f.get(key) or b_f.get(key))[0]
        m = a_f.get(key, (None, 0))[1] - b_f.get(key, (None, 0))[1]
        if m > 0:
            rem_a.append((p, m))
        elif m < 0:
            rem_b.append((p, -m))
    if not rem_a and not rem_b:
        return a.coef == b.coef and a.exps == b.exps
    # cross-multiply the uncancelled parts and compare expansions
    lhs = LaurentPolynomial.monomial(a.vars, a.exps, a.coef)
    rhs = LaurentPolynomial.monomial(b.vars, b.exps, b.coef)
    for p, m in rem_a:
        lhs = lhs * p ** m
    for p, m in rem_b:
        rhs = rhs * p ** m
    return lhs == rhs


def rational_eq_numeric(a: FactoredRational, b: FactoredRational, seed: int = 0) -> bool:
    """Probabilistic preview of value equality at deterministic seeded
    rational points.  Never used for certification."""
    import random

    rng = random.Random(10**6 + seed)
    for _ in range(3):
        point = {}
        for v in a.vars:
            point[v] = Fraction(rng.randint(2, 97), rng.randint(2, 97))
        try:
            va = a.evaluate(point)
            vb = b.evaluate(point)
        except ZeroDivisionError:
            continue
        if va != vb:
            return False
    return True
