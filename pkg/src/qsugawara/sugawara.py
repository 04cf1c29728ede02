"""Sugawara series l_k(z), transfer-matrix series lbar_k(z), the extended
algebra with pi_i and the shift operator delta, and q-Manin checks."""

from __future__ import annotations

import itertools

from .lseries import (ZSeries, l_matrix, l_minus_inverse, mat_scale_cols,
                      perm_length, qdet, quantum_minor, series_inverse)
from .rll import AlgElem, Algebra
from .tensor import (TensorOp, antisymmetrizer, embed_one_leg,
                     identity, partial_trace)

__all__ = [
    "METHODS",
    "ell_series",
    "ell_window",
    "ell_bar_series",
    "ell_bar_minor_sum",
    "qdet_factorization",
    "ExtElem",
    "FreeAlgebra",
    "manin_check",
    "lplus_delta_matrix",
    "manin_detq",
    "detq_reduced",
]

METHODS = ("trace34", "trace39", "minor41", "minor42")


def _d_diag(alg: Algebra):
    F = alg.field
    n = alg.n
    return [F.qpow(n - 2 * j + 1) for j in range(1, n + 1)]


def _lt_matrix(alg: Algebra, with_d: bool = True):
    """L~(z) = L^-(z)^{-1} D (or L^-(z)^{-1} when ``with_d`` is false)."""
    M = l_minus_inverse(alg)
    return mat_scale_cols(M, _d_diag(alg)) if with_d else M


def _leg_op(alg: Algebra, M, a: int, k: int, shift: int) -> TensorOp:
    n = alg.n
    one_leg = TensorOp(n, 1, {((i,), (j,)): M[i][j].shift(shift)
                              for i in range(n) for j in range(n) if M[i][j]})
    return embed_one_leg(one_leg, a, k)


def _leg_product(alg, mats_shifts, k):
    """Ordered product of one-leg operators, as a TensorOp of AlgElems."""
    n = alg.n
    op = identity(n, k, alg.one())
    for M, a, sh in mats_shifts:
        op = op * _leg_op(alg, M, a, k, sh)
    return op


def _check_k(alg, k):
    if not (1 <= k <= alg.n):
        raise ValueError(f"k must lie in 1..{alg.n}")


def ell_series(alg: Algebra, k: int, method: str = "trace34", drop_d: bool = False,
               plain_perm: bool = False) -> AlgElem:
    """l_k(z) as a graded element, exact modulo the algebra truncation.

    ``drop_d`` omits the D factors and ``plain_perm`` builds A^(k) from the
    ordinary permutation; both are mutation controls.
    """
    _check_k(alg, k)
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    n = alg.n
    F = alg.field
    Lp = l_matrix(alg, "+")
    Lt = _lt_matrix(alg, with_d=not drop_d)
    if method in ("trace34", "trace39"):
        A = antisymmetrizer(n, k, F, plain=plain_perm)
        A = A.map(lambda c: alg.scalar(c))
        if method == "trace34":
            P = _leg_product(alg, [(Lp, a, -2 * a + 2) for a in range(1, k + 1)], k)
            Q = _leg_product(alg, [(Lt, a, -n - 2 * a + 2) for a in range(k, 0, -1)], k)
            X = A * P * Q
        else:
            P = _leg_product(alg, [(Lp, a, -2 * a + 2) for a in range(k, 0, -1)], k)
            Q = _leg_product(alg, [(Lt, a, -n - 2 * a + 2) for a in range(1, k + 1)], k)
            X = P * Q * A
        return partial_trace(X, range(1, k + 1)) or alg.zero()
    # minor-type expansions
    if plain_perm:
        raise ValueError("plain_perm applies to the trace methods only")
    total = alg.zero()
    q = F.q
    lt_cache = {}

    def lt(j, i, sh):
        key = (j, i, sh)
        if key not in lt_cache:
            lt_cache[key] = Lt[j - 1][i - 1].shift(sh)
        return lt_cache[key]

    lp_cache = {}

    def lp(i, j, sh):
        key = (i, j, sh)
        if key not in lp_cache:
            lp_cache[key] = Lp[i - 1][j - 1].shift(sh)
        return lp_cache[key]

    for I in itertools.combinations(range(1, n + 1), k):
        for J in itertools.product(range(1, n + 1), repeat=k):
            plus = alg.zero()
            for sigma in itertools.permutations(range(k)):
                ln = perm_length(sigma)
                prod = alg.one()
                if method == "minor41":
                    for a in range(k):
                        prod = prod * lp(I[sigma[a]], J[a], -2 * a)
                        if not prod:
                            break
                    coef = (-q) ** (-ln)
                else:
                    for a in range(k - 1, -1, -1):
                        prod = prod * lp(I[sigma[a]], J[a], -2 * (k - 1 - a))
                        if not prod:
                            break
                    coef = (-q) ** ln
                if prod:
                    plus = plus + prod.scale(coef)
            if not plus:
                continue
            minus = alg.one()
            if method == "minor41":
                for a in range(k - 1, -1, -1):
                    minus = minus * lt(J[a], I[a], -n - 2 * a)
            else:
                for a in range(k):
                    minus = minus * lt(J[a], I[a], -n - 2 * (k - 1 - a))
            total = total + plus * minus
    return total


def ell_window(alg: Algebra, x: AlgElem, lo: int, hi: int) -> ZSeries:
    return ZSeries.from_graded(x, lo, hi)


def ell_bar_series(alg: Algebra, k: int, plain_perm: bool = False,
                   drop_d: bool = False) -> AlgElem:
    """tr A^(k) L+_1(z)...L+_k(zq^{-2k+2}) D_1...D_k in the l+ subalgebra."""
    _check_k(alg, k)
    n = alg.n
    F = alg.field
    Lp = l_matrix(alg, "+")
    if not drop_d:
        Lp = mat_scale_cols(Lp, _d_diag(alg))
    A = antisymmetrizer(n, k, F, plain=plain_perm).map(lambda c: alg.scalar(c))
    P = _leg_product(alg, [(Lp, a, -2 * a + 2) for a in range(1, k + 1)], k)
    return partial_trace(A * P, range(1, k + 1)) or alg.zero()


def ell_bar_minor_sum(alg: Algebra, k: int) -> AlgElem:
    """Sum of principal k x k quantum minors of L+(z) D."""
    _check_k(alg, k)
    LD = mat_scale_cols(l_matrix(alg, "+"), _d_diag(alg))
    total = alg.zero()
    for I in itertools.combinations(range(1, alg.n + 1), k):
        total = total + quantum_minor(alg, "+", I, I, 0, LD)
    return total


def qdet_factorization(alg: Algebra):
    """(l_n(z), qdet L+(z) qdet L-(zq^{-n})^{-1}) as graded elements."""
    n = alg.n
    lhs = ell_series(alg, n, "trace34")
    rhs = qdet(alg, "+") * series_inverse(qdet(alg, "-", -n))
    return lhs, rhs


# ----------------------------------------------------------------------
# extended algebra: pi_i and delta


class ExtElem:
    """Polynomial in delta with coefficients (l+ element) * pi-monomial.

    Terms are {(s, pi, T, word): c} for c * T word * pi^pi * delta^s.  The
    pi's are kept to the right of the l+ factors, so reduction modulo the
    left ideal generated by pi_i - 1 is the substitution pi_i -> 1.
    """

    __slots__ = ("alg", "terms")

    def __init__(self, alg: Algebra, terms: dict):
        self.alg = alg
        self.terms = {k: v for k, v in terms.items() if v}

    @classmethod
    def from_alg(cls, x: AlgElem, s: int = 0, pi=None) -> "ExtElem":
        pi = tuple(pi) if pi is not None else (0,) * x.alg.n
        return cls(x.alg, {(s, pi, T, w): c for (T, w), c in x.terms.items()})

    @classmethod
    def pi(cls, alg: Algebra, i: int) -> "ExtElem":
        e = [0] * alg.n
        e[i - 1] = 1
        return cls(alg, {(0, tuple(e), alg.T0, ()): alg.one_c})

    @classmethod
    def delta(cls, alg: Algebra, power: int = 1) -> "ExtElem":
        return cls(alg, {(power, (0,) * alg.n, alg.T0, ()): alg.one_c})

    def _pi_factor(self, pi, T, w):
        """q-power from moving pi^pi to the right of T * w."""
        e = 0
        for i, a in enumerate(pi, start=1):
            if not a:
                continue
            cnt = sum(t for kk, t in enumerate(T, start=1) if kk < i)
            cnt += sum(1 for g in w if g.i < i)
            e += 2 * a * cnt
        return self.alg.field.qpow(e) if e else self.alg.one_c

    def __add__(self, other):
        if not isinstance(other, ExtElem):
            other = ExtElem.from_alg(self.alg.scalar(other))
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return ExtElem(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return ExtElem(self.alg, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return ExtElem(self.alg, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, ExtElem):
            return self.scale(other)
        alg = self.alg
        F = alg.field
        out: dict = {}
        for (s1, p1, T1, w1), c1 in self.terms.items():
            x = AlgElem(alg, {(T1, w1): c1})
            for (s2, p2, T2, w2), c2 in other.terms.items():
                # pi^p1 delta^s1 * (T2 w2) = shifted (T2 w2) * pi^p1 delta^s1
                zd = AlgElem.word_zdeg(w2)
                c = c2 * F.qpow(-2 * s1 * zd) * self._pi_factor(p1, T2, w2)
                y = AlgElem(alg, {(T2, w2): c})
                pi = tuple(a + b for a, b in zip(p1, p2))
                s = s1 + s2
                for (T, w), cc in (x * y).terms.items():
                    key = (s, pi, T, w)
                    out[key] = out[key] + cc if key in out else cc
        return ExtElem(alg, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, ExtElem):
            return (self - other).terms == {}
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def reduce_mod_j(self) -> dict:
        """{s: AlgElem} after pi_i -> 1."""
        out: dict = {}
        for (s, pi, T, w), c in self.terms.items():
            d = out.setdefault(s, {})
            d[(T, w)] = d[(T, w)] + c if (T, w) in d else c
        return {s: AlgElem(self.alg, d) for s, d in out.items() if AlgElem(self.alg, d)}

    def delta_coeff(self, s: int) -> "ExtElem":
        return ExtElem(self.alg, {k: v for k, v in self.terms.items() if k[0] == s})

    def __repr__(self):
        parts = []
        for s in sorted({k[0] for k in self.terms}):
            for pi in sorted({k[1] for k in self.terms if k[0] == s}):
                x = AlgElem(self.alg, {(T, w): c for (ss, pp, T, w), c in self.terms.items()
                                       if ss == s and pp == pi})
                parts.append(f"[{x.to_text()}]*pi^{pi}*delta^{s}")
        return " + ".join(parts) or "0"


class FreeAlgebra:
    """Free associative algebra on named symbols (no relations)."""

    def __init__(self, field):
        self.field = field

    def sym(self, name: str) -> "FreeElem":
        return FreeElem(self, {(name,): self.field.one})

    def one(self) -> "FreeElem":
        return FreeElem(self, {(): self.field.one})


class FreeElem:
    __slots__ = ("fa", "terms")

    def __init__(self, fa, terms):
        self.fa = fa
        self.terms = {k: v for k, v in terms.items() if v}

    def __add__(self, other):
        if not isinstance(other, FreeElem):
            other = FreeElem(self.fa, {(): self.fa.field(other)} if other else {})
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return FreeElem(self.fa, out)

    __radd__ = __add__

    def __neg__(self):
        return FreeElem(self.fa, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, FreeElem):
            return FreeElem(self.fa, {k: v * other for k, v in self.terms.items()})
        out: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = k1 + k2
                out[k] = out[k] + v1 * v2 if k in out else v1 * v2
        return FreeElem(self.fa, out)

    def __rmul__(self, other):
        return FreeElem(self.fa, {k: other * v for k, v in self.terms.items()})

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return " + ".join(f"({v})*{'*'.join(k) or '1'}" for k, v in sorted(self.terms.items())) or "0"


def manin_check(M, field, lift=None):
    """Test A^(2) M_1 M_2 = A^(2) M_1 M_2 A^(2) for a square matrix ``M``
    given as a list of rows over any ring.  Returns ``(ok, residual)``.

    ``lift`` maps field scalars into the entry ring.
    """
    n = len(M)
    lift = lift or (lambda c: c)
    op = TensorOp(n, 1, {((i,), (j,)): M[i][j] for i in range(n) for j in range(n)
                         if _nonzero(M[i][j])})
    M1 = embed_one_leg(op, 1, 2)
    M2 = embed_one_leg(op, 2, 2)
    A = antisymmetrizer(n, 2, field).map(lift)
    lhs = A * M1 * M2
    res = lhs - lhs * A
    return res.is_zero(), res


def _nonzero(x):
    return x != 0 if isinstance(x, int) else bool(x)


def lplus_delta_matrix(alg: Algebra, with_d: bool = False):
    """The matrix L+(z) delta (or L+(z) D delta) with ExtElem entries."""
    Lp = l_matrix(alg, "+")
    if with_d:
        Lp = mat_scale_cols(Lp, _d_diag(alg))
    return [[ExtElem.from_alg(x, 1) for x in row] for row in Lp]


def manin_detq(alg: Algebra) -> ExtElem:
    """det_q(Pi + L+(z) D delta) as an ExtElem."""
    n = alg.n
    F = alg.field
    M = lplus_delta_matrix(alg, with_d=True)
    for i in range(n):
        M[i][i] = M[i][i] + ExtElem.pi(alg, i + 1)
    total = ExtElem(alg, {})
    for sigma in itertools.permutations(range(n)):
        prod = ExtElem.from_alg(alg.one())
        for col in range(n):
            prod = prod * M[sigma[col]][col]
            if not prod:
                break
        if prod:
            total = total + prod.scale((-F.q) ** (-perm_length(sigma)))
    return total


def detq_reduced(alg: Algebra) -> dict:
    """{k: coefficient of delta^k} of det_q(Pi + L+ D delta) modulo J."""
    return manin_detq(alg).reduce_mod_j()
