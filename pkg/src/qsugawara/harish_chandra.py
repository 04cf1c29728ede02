"""Harish-Chandra images of the Sugawara series, the q-deformed Miura
transformation and the Wakimoto eigenvalue formula.

The commutative targets are handled by one sparse ring.  A variable is a
triple (sign, label, r): sign +1 contributes z^r, sign -1 contributes z^-r.
Variables with r = 0 are units and may carry negative exponents; in
Pi_q(n) the zero mode l-_i[0] is stored as the inverse of l+_i[0].
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .coeff import SYMBOLIC
from .results import CheckResult
from .rll import OPPOSITE, STANDARD, AlgElem, Algebra, TruncPolicy
from .sugawara import detq_reduced, ell_series

__all__ = [
    "PiRing",
    "PiElem",
    "hc_project",
    "hc_project_plus",
    "pi_series",
    "lambda_series",
    "lambda_sum",
    "hc_image_check",
    "hc_multiplicativity_check",
    "DeltaPoly",
    "miura_product",
    "miura_check",
    "wakimoto_eigenvalue_check",
]


class PiRing:
    """Commutative polynomial ring with units, truncated by total l- degree
    < p_minus and total l+ depth <= d_plus (both optional)."""

    def __init__(self, field=SYMBOLIC, p_minus: int | None = None, d_plus: int | None = None):
        self.field = field
        self.p_minus = p_minus
        self.d_plus = d_plus

    def keep(self, mono) -> bool:
        dm = dp = 0
        for (s, _, r), e in mono:
            if r:
                if s > 0:
                    dp += r * e
                else:
                    dm += r * e
        if self.p_minus is not None and dm >= self.p_minus:
            return False
        return self.d_plus is None or dp <= self.d_plus

    def var(self, sign: int, label, r: int, exp: int = 1) -> "PiElem":
        return PiElem(self, {(((sign, label, r), exp),): self.field.one})

    def const(self, c) -> "PiElem":
        return PiElem(self, {(): self.field(c)} if c else {})

    def one(self) -> "PiElem":
        return self.const(1)

    def zero(self) -> "PiElem":
        return PiElem(self, {})


def _mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        s = d.get(v, 0) + e
        if s:
            d[v] = s
        else:
            del d[v]
    return tuple(sorted(d.items()))


def _mono_zdeg(mono) -> int:
    return sum(s * r * e for (s, _, r), e in mono)


def _mono_minus_degree(mono) -> int:
    return sum(r * e for (s, _, r), e in mono if s < 0)


def _var_text(v, e):
    s, label, r = v
    name = f"l{'+' if s > 0 else '-'}_{label}[{-r if s > 0 else r}]"
    return name + (f"^{e}" if e != 1 else "")


class PiElem:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PiRing, terms: dict):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c}

    def _lift(self, other):
        return other if isinstance(other, PiElem) else self.ring.const(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return PiElem(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return PiElem(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "PiElem":
        return PiElem(self.ring, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, PiElem):
            return self.scale(other)
        keep = self.ring.keep
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                if not keep(m):
                    continue
                t = c1 * c2
                out[m] = out[m] + t if m in out else t
        return PiElem(self.ring, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, PiElem):
            return not (self - other).terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def shift(self, c: int) -> "PiElem":
        """z -> z q^c."""
        if not c:
            return self
        F = self.ring.field
        return PiElem(self.ring, {m: v * F.qpow(c * _mono_zdeg(m)) for m, v in self.terms.items()})

    def zpart(self, m: int) -> "PiElem":
        return PiElem(self.ring, {k: v for k, v in self.terms.items() if _mono_zdeg(k) == m})

    def minus_degree_below(self, p: int) -> "PiElem":
        return PiElem(self.ring, {k: v for k, v in self.terms.items() if _mono_minus_degree(k) < p})

    def subs_units(self, value=1) -> "PiElem":
        """Set every unit variable (r = 0) to ``value``."""
        out: dict = {}
        F = self.ring.field
        for m, c in self.terms.items():
            rest = tuple(x for x in m if x[0][2])
            units = sum(e for (v, e) in m if not v[2])
            t = c * (F(value) ** units if units else F.one)
            out[rest] = out[rest] + t if rest in out else t
        return PiElem(self.ring, out)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            mono = "*".join(_var_text(v, e) for v, e in m) or "1"
            parts.append(f"({self.terms[m]})*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return self.to_text()


def series_inverse(x: PiElem, depth: int | None = None) -> PiElem:
    """Inverse of a series in z^-1 whose z^0 part is a unit monomial."""
    ring = x.ring
    c0 = x.zpart(0)
    if len(c0.terms) != 1:
        raise ZeroDivisionError("constant term is not an invertible monomial")
    (mono, c), = c0.terms.items()
    if any(v[2] for v, _ in mono):
        raise ZeroDivisionError("constant term is not an invertible monomial")
    inv0 = PiElem(ring, {tuple((v, -e) for v, e in mono): ring.field.one / c})
    rest = x - c0
    if any(_mono_zdeg(m) > 0 for m in rest.terms):
        raise ValueError("series has positive powers of z")
    step = -(inv0 * rest)
    if depth is None:
        if ring.p_minus is None:
            raise ValueError("an inversion depth is required without an l- bound")
        depth = ring.p_minus
    acc = ring.one()
    term = acc
    for _ in range(depth):
        term = term * step
        if not term:
            break
        acc = acc + term
    return acc * inv0


# ----------------------------------------------------------------------
# projection


def _require_ordering(x: AlgElem, ordering: str):
    if x.alg.ordering != ordering:
        raise ValueError(f"element is normal-ordered for the {x.alg.ordering} ordering, "
                         f"projection needs {ordering}")
    alg = x.alg
    for (_, w) in x.terms:
        if not alg.is_ordered(w):
            raise ValueError("element is not normal-ordered")


def hc_project(x: AlgElem, ring: PiRing, variant: str = "standard") -> PiElem:
    """theta followed by eta: keep ordered monomials in diagonal generators
    only and send l+-_ii[-+r] to the commuting variable l+-_i[-+r]."""
    _require_ordering(x, STANDARD if variant == "standard" else OPPOSITE)
    out: dict = {}
    for (T, w), c in x.terms.items():
        if any(g.i != g.j for g in w):
            continue
        mono = tuple(((1, i, 0), e) for i, e in enumerate(T, start=1) if e)
        for g in w:
            mono = _mono_mul(mono, (((g.sign, g.i, g.r), 1),))
        out[mono] = out[mono] + c if mono in out else c
    return PiElem(ring, out)


def hc_project_plus(x: AlgElem, ring: PiRing) -> PiElem:
    """Projection on the l+ subalgebra with l+_ii[0] = 1 imposed."""
    if any(g.sign < 0 for (_, w) in x.terms for g in w):
        raise ValueError("element involves l- generators")
    return hc_project(x, ring, "standard" if x.alg.ordering == STANDARD else "primed").subs_units(1)


# ----------------------------------------------------------------------
# lambda series


def pi_series(ring: PiRing, sign: int, i, depth: int, unit_inverse_of=None) -> PiElem:
    """Generating series sum_r x[r] z^{sign r} for r < depth.

    The zero mode is the unit (sign, i, 0), or the inverse of the unit
    ``unit_inverse_of`` when given (l-_i[0] = l+_i[0]^{-1} in Pi_q(n)).
    """
    if unit_inverse_of is not None:
        acc = ring.var(*unit_inverse_of, exp=-1)
    else:
        acc = ring.var(sign, i, 0)
    for r in range(1, depth):
        acc = acc + ring.var(sign, i, r)
    return acc


def _pi_providers(ring: PiRing, p: int, d: int):
    plus = {}
    minus = {}

    def lp(i):
        if i not in plus:
            plus[i] = pi_series(ring, 1, i, d + 1)
        return plus[i]

    def lm(i):
        if i not in minus:
            minus[i] = pi_series(ring, -1, i, p, unit_inverse_of=(1, i, 0))
        return minus[i]

    return lp, lm


def lambda_series(ring: PiRing, n: int, i: int, plus, minus, variant: str = "standard") -> PiElem:
    """lambda_i(z) (standard) or lambda'_i(z) (primed) from series providers
    ``plus(i)`` and ``minus(j)``."""
    F = ring.field
    num = plus(i)
    den = ring.one()
    if variant == "standard":
        for j in range(1, i):
            num = num * minus(j).shift(-n + 2 * j)
        for j in range(1, i + 1):
            den = den * minus(j).shift(-n + 2 * j - 2)
    elif variant == "primed":
        for j in range(i + 1, n + 1):
            num = num * minus(j).shift(n - 2 * i - 2 * (j - i - 1))
        for j in range(i, n + 1):
            den = den * minus(j).shift(n - 2 * i - 2 * (j - i))
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return (num * series_inverse(den)).scale(F.qpow(n - 2 * i + 1))


def lambda_sum(n: int, k: int, lam, variant: str = "standard") -> PiElem:
    """sum over i_1 < ... < i_k (standard) or i_1 > ... > i_k (primed) of
    lam(i_1)(z) lam(i_2)(zq^-2) ... lam(i_k)(zq^{-2k+2})."""
    total = None
    for combo in itertools.combinations(range(1, n + 1), k):
        idx = combo if variant == "standard" else tuple(reversed(combo))
        prod = None
        for a, i in enumerate(idx):
            f = lam(i).shift(-2 * a)
            prod = f if prod is None else prod * f
        total = prod if total is None else total + prod
    return total


def _compare_window(a: PiElem, b: PiElem, lo: int, hi: int, p: int):
    for m in range(lo, hi + 1):
        d = (a.zpart(m) - b.zpart(m)).minus_degree_below(p)
        if d:
            return m, d
    return None


def hc_image_check(n: int, k: int, field, variant: str = "standard", p_minus: int = 3,
                   window=(-1, 1), method: str = "minor41", drop_d: bool = False) -> CheckResult:
    """chi (or chi') of the normal-ordered l_k(z) equals the lambda-sum
    coefficientwise on the window, modulo l- degree >= p_minus."""
    lo, hi = window
    p = p_minus
    d = hi + p - 1
    ordering = STANDARD if variant == "standard" else OPPOSITE
    alg = Algebra(n, field, ordering=ordering,
                  trunc=TruncPolicy(p_minus=p, d_plus=d, series_order=p + hi + 2))
    ring = PiRing(field, p, d)
    image = hc_project(ell_series(alg, k, method, drop_d=drop_d), ring, variant)
    lp, lm = _pi_providers(ring, p, d)
    lam_cache = {}

    def lam(i):
        if i not in lam_cache:
            lam_cache[i] = lambda_series(ring, n, i, lp, lm, variant)
        return lam_cache[i]

    expected = lambda_sum(n, k, lam, variant)
    bad = _compare_window(image, expected, lo, hi, p)
    if bad:
        m, diff = bad
        return CheckResult(False, f"z^{m}: image - formula = {diff.to_text()}")
    return CheckResult(True, None, {"window": [lo, hi], "p_minus": p})


def hc_multiplicativity_check(n: int, field, k: int = 1, p_minus: int = 3,
                              window=(-1, 1)) -> CheckResult:
    """chi(c_a c_b) = chi(c_a) chi(c_b) for z-coefficients c_a, c_b of l_k.

    With c_a known modulo l- degree >= p, the product c_a c_b is exact in
    l- degree below p - max(b, 0); only that part is compared.
    """
    lo, hi = window
    p = p_minus
    d = hi + p - 1
    alg = Algebra(n, field, trunc=TruncPolicy(p_minus=p, d_plus=d, series_order=p + hi + 2))
    ring = PiRing(field, None, None)
    ell = ell_series(alg, k, "minor41")
    coeffs = {m: ell.zpart(m) for m in range(lo, hi + 1)}
    images = {m: hc_project(c, ring) for m, c in coeffs.items()}
    for a in range(lo, hi + 1):
        for b in range(lo, hi + 1):
            bound = p - max(b, 0)
            if bound <= 0:
                continue
            prod = coeffs[a].mul(coeffs[b], keep=lambda w, bd=bound: sum(
                g.r for g in w if g.sign < 0) < bd)
            lhs = hc_project(prod, ring).minus_degree_below(bound)
            rhs = (images[a] * images[b]).minus_degree_below(bound)
            if lhs != rhs:
                return CheckResult(False, f"z^{a} * z^{b}: residual {(lhs - rhs).to_text()}")
    return CheckResult(True, None, {"window": [lo, hi], "p_minus": p})


# ----------------------------------------------------------------------
# Miura transformation


class DeltaPoly:
    """Polynomial in delta with coefficients in a commutative series ring,
    delta g(z) = g(zq^-2) delta."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict):
        self.coeffs = {s: c for s, c in coeffs.items() if c}

    def __mul__(self, other: "DeltaPoly") -> "DeltaPoly":
        out: dict = {}
        for s1, a in self.coeffs.items():
            for s2, b in other.coeffs.items():
                t = a * b.shift(-2 * s1)
                s = s1 + s2
                out[s] = out[s] + t if s in out else t
        return DeltaPoly(out)

    def __eq__(self, other):
        if not isinstance(other, DeltaPoly):
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.coeffs.get(s, 0) == other.coeffs.get(s, 0)
                   if s in self.coeffs and s in other.coeffs
                   else not (self.coeffs.get(s) or other.coeffs.get(s))
                   for s in keys)

    def to_text(self) -> str:
        return "\n".join(f"delta^{s}: {self.coeffs[s].to_text()}" for s in sorted(self.coeffs))


def miura_product(n: int, ring: PiRing, depth: int) -> DeltaPoly:
    """(1 + lbar_1(z) delta) ... (1 + lbar_n(z) delta), l+_i[0] = 1."""
    F = ring.field
    acc = DeltaPoly({0: ring.one()})
    for i in range(1, n + 1):
        lbar = (ring.one() + sum((ring.var(1, i, r) for r in range(1, depth + 1)),
                                 ring.zero())).scale(F.qpow(n - 2 * i + 1))
        acc = acc * DeltaPoly({0: ring.one(), 1: lbar})
    return acc


def miura_check(n: int, field=SYMBOLIC, depth: int = 3) -> CheckResult:
    """chi(det_q(Pi + L+(z) D delta)) = (1 + lbar_1 delta)...(1 + lbar_n delta)
    for all z-powers up to ``depth``."""
    alg = Algebra(n, field, trunc=TruncPolicy(p_minus=1, d_plus=depth, series_order=depth + 2))
    ring = PiRing(field, None, depth)
    red = detq_reduced(alg)
    lhs = DeltaPoly({s: hc_project_plus(x, ring) for s, x in red.items()})
    rhs = miura_product(n, ring, depth)
    for s in sorted(set(lhs.coeffs) | set(rhs.coeffs)):
        a = lhs.coeffs.get(s, ring.zero())
        b = rhs.coeffs.get(s, ring.zero())
        if a != b:
            return CheckResult(False, f"delta^{s}: residual {(a - b).to_text()}")
    return CheckResult(True, None, {"depth": depth})


# ----------------------------------------------------------------------
# Wakimoto eigenvalues


def _kappa_providers(ring: PiRing, n: int, depth: int, values=None):
    """kappa+_i(z) = sum_r kappa+_i[-r] z^r and kappa-(z) = sum_r kappa-[r] z^-r,
    symbolic or with rational coefficients ``values = (plus_lists, minus_list)``."""
    if values is None:
        plus = {i: pi_series(ring, 1, i, depth) for i in range(1, n + 1)}
        return plus, pi_series(ring, -1, 0, depth)
    pv, mv = values
    return ({i: _rational_series(ring, 1, pv[i - 1]) for i in range(1, n + 1)},
            _rational_series(ring, -1, mv))


def _rational_series(ring: PiRing, sign: int, coeffs) -> PiElem:
    """sum_r c_r z^{sign r}; the powers of z (resp. z^-1) are kept as powers
    of a formal variable so the bidegree truncation stays exact."""
    out = {}
    for r, c in enumerate(coeffs):
        if c:
            out[(((sign, "z", 1), r),) if r else ()] = ring.field(c)
    return PiElem(ring, out)


def wakimoto_eigenvalue_check(n: int, k: int, field=SYMBOLIC, depth: int = 3,
                              values=None, seed: int | None = None) -> CheckResult:
    """Substituting l+_i -> kappa+_i and every l-_j -> kappa- into the
    lambda-sum of l_k equals sum Lambda_{i_1}(z)...Lambda_{i_k}(zq^{-2k+2}),
    Lambda_i(z) = q^{n-2i+1} kappa+_i(z) kappa-(zq^-n)^{-1}.

    Compared on z^m for -depth < m < depth.  ``values`` or ``seed`` switch
    from symbolic kappa coefficients to rational ones.
    """
    if seed is not None and values is None:
        rng = random.Random(seed)

        def rnd():
            return Fraction(rng.randint(1, 9), rng.randint(1, 9))

        values = ([[rnd() for _ in range(depth)] for _ in range(n)],
                  [rnd() for _ in range(depth)])
    ring = PiRing(field, depth, depth - 1)
    plus, minus = _kappa_providers(ring, n, depth, values)
    F = ring.field

    def lam(i):
        return lambda_series(ring, n, i, lambda a: plus[a], lambda b: minus, "standard")

    def Lam(i):
        return (plus[i] * series_inverse(minus.shift(-n))).scale(F.qpow(n - 2 * i + 1))

    lhs = lambda_sum(n, k, lam)
    rhs = lambda_sum(n, k, Lam)
    bad = _compare_window(lhs, rhs, -(depth - 1), depth - 1, depth)
    if bad:
        m, diff = bad
        return CheckResult(False, f"z^{m}: residual {diff.to_text()}")
    return CheckResult(True, None, {"depth": depth, "symbolic": values is None})
