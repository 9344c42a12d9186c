"""Weyl-sum localization for global quasi-flag spaces and the closed
Macdonald-polynomial form of their stable Euler characteristics.

Everything in this module lives on the SL(N) torus: the last coordinate
is eliminated through z_N = (z_1 ... z_{N-1})^{-1}, so the working
context is (q, t, z_1 .. z_{N-1}).  Weights are given by their
coefficients (l_1 .. l_{N-1}) on the fundamental weights, with
z^{weight} = prod_k z_k^{Lambda_k}, Lambda_k = l_k + ... + l_{N-1}.

The fixed-degree character is the finite localization sum

    sum_{gamma + beta = alpha, w in W}
        z^{w weight} q^{<gamma, weight>}
        J_gamma(q^{-1}, t, wz) J_beta(q, t, wz)
        prod_{i<j} (1 - t w(z_i/z_j)) / (1 - w(z_i/z_j))

whose low-order (q,t)-coefficients stabilize as alpha grows; the stable
series factors as H_0 times explicit Pochhammer ratios times a Macdonald
polynomial.  The partition attached to (l_1..l_{N-1}) is
(l_1+...+l_{N-1}, l_1+...+l_{N-2}, ..., l_1, 0): note the reversal
relative to the usual highest-weight dictionary.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .algebra import FactoredRational, LaurentPolynomial, rational_eq
from .laumon import C_theta, lau_vars
from .macdonald import macdonald_P
from .qcalc import pochhammer
from .series import QTSeries, expand, expand_sum
from .tableaux import Partition, theta_by_degree, theta_upto_degree

__all__ = [
    "GLWeight",
    "glob_vars",
    "euler_char_global",
    "euler_char_series",
    "weyl_invariance_check",
    "H_limit",
    "H0_closed",
    "W_poly",
    "F_poly",
    "frakD_K",
    "h_equals_p",
    "G_value",
    "h_series",
    "verify_cor_diff",
    "chi_bQ_closed",
    "chi_bQ_localization",
    "NotStabilized",
    "IdentityFails",
]


class NotStabilized(ArithmeticError):
    pass


class IdentityFails(ArithmeticError):
    pass


def glob_vars(n: int) -> tuple:
    return ("q", "t") + tuple(f"z{i}" for i in range(1, n))


def _slot_exp(n: int, i: int) -> tuple:
    """Exponent vector of z_i over glob_vars(n); z_N carries the SL
    constraint exponents (-1, ..., -1)."""
    e = [0] * (n + 1)
    if i < n:
        e[1 + i] = 1
    else:
        for k in range(2, n + 1):
            e[k] = -1
    return tuple(e)


def _wslot_exp(n: int, i: int, w) -> tuple:
    """Exponent vector of the i-th localization coordinate under w.

    The fixed-point embedding realizes the torus through the inverse
    coordinates, (wz)_i = z_{w(i)}^{-1}; this sign is what makes both the
    closed product comparison (with the reversed-partition dictionary)
    and the shift-operator identity with eigenvalue z_1 + ... + z_N hold
    simultaneously, and was calibrated against exact low-degree data.
    """
    return tuple(-x for x in _slot_exp(n, w[i - 1]))


@dataclass(frozen=True)
class GLWeight:
    """Integer weight of SL(N) in fundamental-weight coordinates."""

    lvec: tuple
    n: int

    def __init__(self, lvec, n=None):
        lvec = tuple(int(x) for x in lvec)
        object.__setattr__(self, "lvec", lvec)
        object.__setattr__(self, "n", len(lvec) + 1 if n is None else n)
        if self.n != len(lvec) + 1:
            raise ValueError("weight vector must have length N-1")

    def components(self) -> tuple:
        """GL components Lambda_k = l_k + ... + l_{N-1} (Lambda_N = 0)."""
        out = []
        s = 0
        for x in reversed(self.lvec):
            s += x
            out.append(s)
        out.reverse()
        return tuple(out) + (0,)

    def is_dominant(self) -> bool:
        return all(x >= 0 for x in self.lvec)

    def pairing(self, gamma) -> int:
        """<gamma, weight> with gamma in the simple-coroot basis."""
        return sum(g * l for g, l in zip(gamma, self.lvec))

    def partition(self) -> tuple:
        """Indexing partition (l_1+...+l_{N-1}, ..., l_1+l_2, l_1, 0)."""
        if not self.is_dominant():
            raise ValueError("partition dictionary needs a dominant weight")
        return Partition([sum(self.lvec[: self.n - i]) for i in range(1, self.n)])

    def shifted(self, r: int) -> "GLWeight":
        """The weight-lattice shift T_r: l_{r-1} += 1, l_r -= 1."""
        if not 1 <= r <= self.n:
            raise ValueError("r out of range")
        l = list(self.lvec)
        if r >= 2:
            l[r - 2] += 1
        if r <= self.n - 1:
            l[r - 1] -= 1
        return GLWeight(tuple(l))

    def z_monomial(self, w=None) -> tuple:
        """Exponent vector of z^{w . weight} in the localization
        coordinates (see :func:`_wslot_exp`)."""
        n = self.n
        comps = self.components()
        w = w or tuple(range(1, n + 1))
        e = [0] * (n + 1)
        for k in range(1, n + 1):
            se = _wslot_exp(n, k, w)
            c = comps[k - 1]
            if c:
                e = [a + c * b for a, b in zip(e, se)]
        return tuple(e)


def _weyl_factor(n: int, w) -> FactoredRational:
    """prod_{i<j} (1 - t (wz)_j/(wz)_i) / (1 - (wz)_j/(wz)_i) in the
    localization coordinates.

    The orientation is pinned by requiring the untwisted fixed-degree
    characters to come out as t-polynomials (the opposite choice leaves
    uncancelled poles)."""
    vars = glob_vars(n)
    one = LaurentPolynomial.one(vars)
    factors = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            se = [b - a for a, b in zip(_wslot_exp(n, i, w), _wslot_exp(n, j, w))]
            ratio = LaurentPolynomial.monomial(vars, se)
            tratio = LaurentPolynomial.monomial(vars, [x + (1 if k == 1 else 0)
                                                       for k, x in enumerate(se)])
            factors.append((one - tratio, 1))
            factors.append((one - ratio, -1))
    return FactoredRational(vars, 1, None, factors)


_c_cache: dict = {}


def _C_glob(theta_key, n: int, w, inverted: bool) -> FactoredRational:
    """C_theta with z -> wz (and optionally q -> 1/q), pushed to the SL
    context."""
    key = (theta_key, n, w, inverted)
    hit = _c_cache.get(key)
    if hit is not None:
        return hit
    base_key = (theta_key, n, inverted)
    base = _c_cache.get(base_key)
    if base is None:
        from .tableaux import ThetaMatrix

        pairs = [(i, j) for i in range(1, n) for j in range(i + 1, n + 1)]
        th = ThetaMatrix(n, dict(zip(pairs, theta_key)))
        base = C_theta(th, n)
        if inverted:
            lv = lau_vars(n)
            e = [0] * len(lv)
            e[0] = -1
            base = base.substitute("q", 1, e)
        _c_cache[base_key] = base
    gv = glob_vars(n)
    mapping = {f"z{i}": (1, _wslot_exp(n, i, w)) for i in range(1, n + 1)}
    out = base.transform(gv, mapping)
    _c_cache[key] = out
    return out


def _localization_terms(alpha, weight: GLWeight, workers: int = 1) -> list:
    """All flattened localization summands for the given degree, as
    factored rationals over the SL context."""
    n = weight.n
    vars = glob_vars(n)
    alpha = tuple(alpha)
    perms = sorted(permutations(range(1, n + 1)))
    splittings = []
    for gamma in _sub_degrees(alpha):
        beta = tuple(a - g for a, g in zip(alpha, gamma))
        splittings.append((gamma, beta))
    jobs = []
    for w in perms:
        wf = _weyl_factor(n, w)
        zw = FactoredRational.monomial(vars, weight.z_monomial(w))
        for gamma, beta in splittings:
            qpow = weight.pairing(gamma)
            pref = zw * FactoredRational.monomial(
                vars, [qpow] + [0] * (n - 1 + 1)) * wf
            for thg in theta_by_degree(n, gamma):
                cg = _C_glob(thg.entry_list(), n, w, True)
                for thb in theta_by_degree(n, beta):
                    cb = _C_glob(thb.entry_list(), n, w, False)
                    jobs.append(pref * cg * cb)
    return jobs


def _sub_degrees(alpha):
    out = [()]
    for a in alpha:
        out = [g + (i,) for g in out for i in range(a + 1)]
    return out


def euler_char_global(alpha, weight: GLWeight) -> FactoredRational:
    """The fixed-degree global character as one exact rational function
    (a Laurent polynomial in disguise; the Weyl denominators cancel)."""
    terms = _localization_terms(alpha, weight)
    total = FactoredRational.zero(glob_vars(weight.n))
    for t in terms:
        total = total + t
    return total


def euler_char_series(alpha, weight: GLWeight, order: int, workers: int = 1) -> QTSeries:
    """(q,t)-expansion of the fixed-degree global character to the given
    order; certifies that all Weyl denominators cancel."""
    terms = _localization_terms(alpha, weight)
    return expand_sum(terms, order, workers=workers)


def weyl_invariance_check(alpha, weight: GLWeight) -> dict:
    """Exact W-invariance of the fixed-degree character: compare the
    rational function against its image under each simple transposition
    of the torus coordinates."""
    n = weight.n
    vars = glob_vars(n)
    total = euler_char_global(alpha, weight)
    ok = True
    for k in range(1, n):
        sigma = list(range(1, n + 1))
        sigma[k - 1], sigma[k] = sigma[k], sigma[k - 1]
        mapping = {f"z{i}": (1, _slot_exp(n, sigma[i - 1])) for i in range(1, n)}
        ok = ok and rational_eq(total, total.transform(vars, mapping))
    return {"alpha": list(alpha), "weight": list(weight.lvec), "passed": bool(ok)}


def default_h_schedule(n: int, steps: int = 4) -> list:
    return [(k,) * (n - 1) for k in range(1, steps + 1)]


def H_limit(weight: GLWeight, order: int, schedule=None, workers: int = 1,
            require_stable: bool = True) -> QTSeries:
    """Stable (q,t)-expansion of the global characters along an
    increasing degree schedule; raises :class:`NotStabilized` when the
    last two points disagree below the truncation order."""
    n = weight.n
    if schedule is None:
        schedule = default_h_schedule(n)
    series = [euler_char_series(a, weight, order, workers) for a in schedule]
    if len(series) >= 2 and series[-1] != series[-2]:
        if require_stable:
            raise NotStabilized(
                f"characters at {schedule[-2]} and {schedule[-1]} disagree below order {order}")
    return series[-1]


def H0_closed(n: int) -> FactoredRational:
    """Closed product formula for the stable untwisted character (a
    function of t alone)."""
    if n < 2:
        raise ValueError("rank must be >= 2")
    vars = glob_vars(n)
    one = LaurentPolynomial.one(vars)

    def tpow(k):
        e = [0] * (n + 1)
        e[1] = k
        return LaurentPolynomial.monomial(vars, e)

    num = []
    for m in range(2, n + 1):
        p = LaurentPolynomial.zero(vars)
        for k in range(m):
            p = p + tpow(k)
        num.append((p, 1))
    den = []
    for m in range(2, n):
        den.append((one - tpow(m), 2 * (n - m)))
    den.append((one - tpow(n), 1))
    if n > 2:
        den.append((one - tpow(1), n - 2))
    return FactoredRational(vars, 1, None, num + [(p, -m) for p, m in den])


def W_poly(n: int) -> list:
    """Coefficient list of the t-factorial product
    prod_{k=2}^{N} (1 + t + ... + t^{k-1})."""
    coeffs = [1]
    for k in range(2, n + 1):
        new = [0] * (len(coeffs) + k - 1)
        for i, c in enumerate(coeffs):
            for j in range(k):
                new[i + j] += c
        coeffs = new
    return coeffs


def F_poly(n: int, order: int) -> list:
    """Counting series of unordered collections of positive roots: a
    multiset of nonsimple roots alpha (each weighing height-1) together
    with a multiset of arbitrary positive roots beta (each weighing
    height+1).  Returns coefficients up to the given order."""
    items = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            h = j - i
            if h >= 2:
                items.append(h - 1)
            items.append(h + 1)
    counts = [0] * (order + 1)
    counts[0] = 1
    for wgt in items:
        for k in range(wgt, order + 1):
            counts[k] += counts[k - wgt]
    return counts


def frakD_K(weight: GLWeight, r: int) -> FactoredRational:
    """Shift coefficient K_r of the difference operator acting through
    the lattice shifts T_r, over (q, t).

    With upward sums S_s = l_r + ... + l_s and downward sums
    S'_j = l_{r-1} + ... + l_{r-j}:

        K_r = prod_{s=r}^{N-1} (1 - t^{s-r+2} q^{S_s - 1}) / (1 - t^{s-r+1} q^{S_s})
            * prod_{j=1}^{r-1} (1 - t^{j-1} q^{S'_j + 1}) / (1 - t^j q^{S'_j})

    Consistent with the Pieri coefficients through the closed-form
    prefactor: K_r(w) = L_r(w) pref(w) / pref(T_r w).
    """
    qt = ("q", "t")
    n = weight.n
    lvec = weight.lvec
    if not 1 <= r <= n:
        raise ValueError("r out of range")
    one = LaurentPolynomial.one(qt)

    def fac(tp, qp):
        return one - LaurentPolynomial.monomial(qt, (qp, tp))

    num, den = [], []
    s_up = 0
    for s in range(r, n):
        s_up += lvec[s - 1]
        num.append(fac(s - r + 2, s_up - 1))
        den.append(fac(s - r + 1, s_up))
    s_dn = 0
    for j in range(1, r):
        s_dn += lvec[r - 1 - j]
        num.append(fac(j - 1, s_dn + 1))
        den.append(fac(j, s_dn))
    return FactoredRational(qt, 1, None,
                            [(p, 1) for p in num] + [(p, -1) for p in den])


def hp_prefactor(weight: GLWeight) -> FactoredRational:
    """prod_{1<=i<=j<=N-1} (t^{j-i+1}; q)_{l_i+..+l_j} / (t^{j-i} q; q)_{l_i+..+l_j}
    over (q, t); requires a dominant weight."""
    qt = ("q", "t")
    if not weight.is_dominant():
        raise ValueError("prefactor requires a dominant weight")
    n = weight.n
    out = FactoredRational.one(qt)
    for i in range(1, n):
        for j in range(i, n):
            ln = sum(weight.lvec[i - 1: j])
            num = pochhammer(FactoredRational.monomial(qt, (0, j - i + 1)), ln)
            den = pochhammer(FactoredRational.monomial(qt, (1, j - i)), ln)
            out = out * num / den
    return out


_mz_memo: dict = {}


def macdonald_in_z(weight: GLWeight) -> FactoredRational:
    """P_{partition(weight)}(z_1..z_N; q, t) on the SL torus, as a single
    factored rational over glob_vars."""
    n = weight.n
    hit = _mz_memo.get((weight.lvec, n))
    if hit is not None:
        return hit
    vars = glob_vars(n)
    P = macdonald_P(weight.partition(), n)
    total = FactoredRational.zero(vars)
    s_to_t = {"s": (1, (0, 1) + (0,) * (n - 1))}
    for nu, c in sorted(P.mcoeffs.items()):
        cc = c.transform(vars, s_to_t)
        base = tuple(nu) + (0,) * (n - len(nu))
        mpoly = LaurentPolynomial.zero(vars)
        for perm in sorted(set(permutations(base))):
            e = [0] * (n + 1)
            for slot, k in enumerate(perm, start=1):
                if k:
                    se = _slot_exp(n, slot)
                    e = [a + k * b for a, b in zip(e, se)]
            mpoly = mpoly + LaurentPolynomial.monomial(vars, tuple(e))
        total = total + cc * FactoredRational.from_poly(mpoly)
    _mz_memo[(weight.lvec, n)] = total
    return total


def h_equals_p(weight: GLWeight):
    """The closed form of the stable twisted character: returns
    (prefactor, partition, P) with the stable series equal to
    H0_closed * prefactor * P on the SL torus."""
    if not weight.is_dominant():
        raise ValueError("closed form defined for dominant weights only")
    return hp_prefactor(weight), weight.partition(), macdonald_P(weight.partition(), weight.n)


def G_value(weight: GLWeight) -> FactoredRational:
    """H0 * prefactor * P as one exact rational over the SL context;
    zero for nondominant weights (the closed-form family)."""
    n = weight.n
    vars = glob_vars(n)
    if not weight.is_dominant():
        return FactoredRational.zero(vars)
    pref = hp_prefactor(weight).transform(vars, {})
    return H0_closed(n) * pref * macdonald_in_z(weight)


def h_series(weight: GLWeight, order: int) -> QTSeries:
    """(q,t)-expansion of the closed form to the given order."""
    return expand(G_value(weight), order)


def _zsum(n: int) -> FactoredRational:
    vars = glob_vars(n)
    out = LaurentPolynomial.zero(vars)
    for i in range(1, n + 1):
        out = out + LaurentPolynomial.monomial(vars, _slot_exp(n, i))
    return FactoredRational.from_poly(out)


def verify_cor_diff(weight: GLWeight, strict: bool = False) -> dict:
    """Exact eigen identity for the shift operator on the closed-form
    family: sum_r K_r(w) G(T_r w) = (z_1 + ... + z_N) G(w)."""
    n = weight.n
    vars = glob_vars(n)
    lhs = FactoredRational.zero(vars)
    for r in range(1, n + 1):
        shifted = weight.shifted(r)
        g = G_value(shifted)
        if g.is_zero():
            continue
        k = frakD_K(weight, r).transform(vars, {})
        lhs = lhs + k * g
    rhs = _zsum(n) * G_value(weight)
    ok = rational_eq(lhs, rhs)
    if not ok and strict:
        raise IdentityFails(f"shift identity fails at weight {weight.lvec}")
    return {"weight": list(weight.lvec), "passed": bool(ok)}


# -- arc-space closed formula ---------------------------------------------------


def chi_bQ_closed(weight: GLWeight, order: int) -> QTSeries:
    """H0 * prefactor * prod_{i=1}^{N-2} ((t^i;q)_inf / (q t^{i+1};q)_inf)^{N-i-1} * P,
    expanded to the given order."""
    from .qcalc import pochhammer_inf

    n = weight.n
    vars = glob_vars(n)
    base = expand(G_value(weight), order)

    def mono(qe, te):
        e = [0] * (n + 1)
        e[0], e[1] = qe, te
        return FactoredRational.monomial(vars, e)

    for i in range(1, n - 1):
        f = pochhammer_inf(mono(0, i), order) * pochhammer_inf(mono(1, i + 1), order).inverse()
        for _ in range(n - i - 1):
            base = base * f
    return base.truncate(order)


def chi_bQ_localization(weight: GLWeight, order: int, shell_margin: int = 2,
                        workers: int = 1) -> QTSeries:
    """The same character from torus fixed points on the arc space:

        sum_w z^{w weight} [ sum_theta C_theta(q^{-1}, t, wz) q^{<deg theta, weight>} ]
            * prod_{i<j} (q t z_{w(j)}/z_{w(i)};q)_inf / (q z_{w(j)}/z_{w(i)};q)_inf
            * ((qt;q)_inf/(q;q)_inf)^{N-1}
            * prod_{i<j} (1 - t w(z_i/z_j))/(1 - w(z_i/z_j))

    truncated by term valuation; the theta sum is scanned shell by shell
    in the total degree and must exhaust itself below the order."""
    n = weight.n
    vars = glob_vars(n)
    if not weight.is_dominant():
        raise ValueError("the arc-space sum converges for dominant weights")

    def poch_trunc(base_exps, count_hint=None) -> FactoredRational:
        """(monomial; q)_inf as a finite product capturing everything
        below the truncation order."""
        deg = base_exps[0] + base_exps[1]
        kmax = max(0, order - deg + 1)
        return pochhammer(FactoredRational.monomial(vars, base_exps), kmax)

    perms = sorted(permutations(range(1, n + 1)))
    terms = []
    for w in perms:
        wf = _weyl_factor(n, w)
        zw = FactoredRational.monomial(vars, weight.z_monomial(w))
        inf_part = FactoredRational.one(vars)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                se = [a - b for a, b in zip(_wslot_exp(n, j, w), _wslot_exp(n, i, w))]
                num = [1 + se[0], 1 + se[1]] + list(se[2:])
                den = [1 + se[0], 0 + se[1]] + list(se[2:])
                inf_part = inf_part * poch_trunc(tuple(num)) / poch_trunc(tuple(den))
        inf_part = inf_part * (poch_trunc((1, 1) + (0,) * (n - 1))
                               / poch_trunc((1, 0) + (0,) * (n - 1))) ** (n - 1)
        base_pref = zw * wf * inf_part
        shell = 0
        exhausted = 0
        while exhausted < shell_margin:
            contributed = False
            for th in theta_upto_degree(n, shell):
                if th.total_degree() != shell:
                    continue
                cg = _C_glob(th.entry_list(), n, w, True)
                qpow = weight.pairing(th.degree_vector())
                e = [qpow] + [0] * n
                term = base_pref * cg * FactoredRational.monomial(vars, e)
                if term.valuation_lb(("q", "t")) <= order:
                    terms.append(term)
                    contributed = True
            shell += 1
            exhausted = 0 if contributed else exhausted + 1
    return expand_sum(terms, order, workers=workers)
