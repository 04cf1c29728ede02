"""Sparse operators on tensor powers of C^n and the R-matrix objects built
from them.

Multi-indices are stored 0-based internally; leg numbers in the public API
are 1-based. Entries may be any ring elements (field scalars, polynomials,
power series, algebra elements); products keep the left/right order of
entries so noncommutative entries are handled correctly.
"""

from __future__ import annotations

import itertools
from math import comb, factorial

from .coeff import FPS, SYMBOLIC, f_series
from .polys import MPoly, RatFuncX, UPoly

__all__ = [
    "TensorOp",
    "identity",
    "matrix_unit",
    "embed_one_leg",
    "embed_two_leg",
    "partial_transpose",
    "partial_trace",
    "d_matrix",
    "r_two_param",
    "r_bar",
    "r_full",
    "q_permutation",
    "plain_permutation",
    "reduced_word",
    "perm_action",
    "antisymmetrizer",
    "fusion_check",
    "ybe_residual",
    "crossing_residuals",
    "unitarity_residual",
    "invert_fps_op",
]


class TensorOp:
    """Operator on (C^n)^{otimes k} with sparse entries ``{(I, J): c}``."""

    __slots__ = ("n", "k", "entries")

    def __init__(self, n: int, k: int, entries: dict | None = None):
        self.n = n
        self.k = k
        ents = {}
        for (I, J), c in (entries or {}).items():
            if len(I) != k or len(J) != k:
                raise ValueError("multi-index length does not match the number of legs")
            if c:
                ents[(tuple(I), tuple(J))] = c
        self.entries = ents

    @classmethod
    def _raw(cls, n, k, entries):
        op = cls.__new__(cls)
        op.n, op.k, op.entries = n, k, entries
        return op

    def _check(self, other):
        if not isinstance(other, TensorOp) or (self.n, self.k) != (other.n, other.k):
            raise ValueError("tensor operators must share (n, k)")

    def __getitem__(self, key):
        return self.entries.get(key, 0)

    def __add__(self, other):
        self._check(other)
        out = dict(self.entries)
        for key, c in other.entries.items():
            if key in out:
                s = out[key] + c
                if s:
                    out[key] = s
                else:
                    del out[key]
            else:
                out[key] = c
        return TensorOp._raw(self.n, self.k, out)

    def __neg__(self):
        return TensorOp._raw(self.n, self.k, {key: -c for key, c in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TensorOp):
            return self.map(lambda c: c * other)
        self._check(other)
        rows: dict = {}
        for (K, J), c in other.entries.items():
            rows.setdefault(K, []).append((J, c))
        out: dict = {}
        for (I, K), c1 in self.entries.items():
            for J, c2 in rows.get(K, ()):
                t = c1 * c2
                key = (I, J)
                out[key] = out[key] + t if key in out else t
        return TensorOp(self.n, self.k, out)

    def __rmul__(self, other):
        return self.map(lambda c: other * c)

    def map(self, fn) -> "TensorOp":
        return TensorOp(self.n, self.k, {key: fn(c) for key, c in self.entries.items()})

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, TensorOp):
            return NotImplemented
        return (self.n, self.k) == (other.n, other.k) and (self - other).is_zero()

    def __hash__(self):
        return hash((self.n, self.k, frozenset(self.entries)))

    def dense(self, zero=0):
        idx = list(itertools.product(range(self.n), repeat=self.k))
        return [[self.entries.get((I, J), zero) for J in idx] for I in idx]

    def trace(self):
        """Full trace (sum of diagonal entries)."""
        acc = None
        for (I, J), c in self.entries.items():
            if I == J:
                acc = c if acc is None else acc + c
        return 0 if acc is None else acc

    def first_nonzero(self):
        """A deterministic (key, entry) witness, or None."""
        if not self.entries:
            return None
        key = min(self.entries)
        return key, self.entries[key]

    def __repr__(self):
        return f"TensorOp(n={self.n}, k={self.k}, nnz={len(self.entries)})"


def _check_leg(a: int, k: int):
    if not (1 <= a <= k):
        raise ValueError(f"leg {a} out of range 1..{k}")


def identity(n: int, k: int, one=1) -> TensorOp:
    return TensorOp._raw(n, k, {(I, I): one for I in itertools.product(range(n), repeat=k)})


def matrix_unit(n: int, i: int, j: int, one=1) -> TensorOp:
    """e_ij on C^n, 1-based indices."""
    return TensorOp(n, 1, {((i - 1,), (j - 1,)): one})


def embed_one_leg(C: TensorOp, a: int, k: int) -> TensorOp:
    if C.k != 1:
        raise ValueError("embed_one_leg needs a one-leg operator")
    _check_leg(a, k)
    out = {}
    for rest in itertools.product(range(C.n), repeat=k - 1):
        for ((i,), (j,)), c in C.entries.items():
            I = rest[:a - 1] + (i,) + rest[a - 1:]
            J = rest[:a - 1] + (j,) + rest[a - 1:]
            out[(I, J)] = c
    return TensorOp._raw(C.n, k, out)


def embed_two_leg(C: TensorOp, a: int, b: int, k: int) -> TensorOp:
    """C_ab: ``C`` acting on legs a (its first factor) and b (its second)."""
    if C.k != 2:
        raise ValueError("embed_two_leg needs a two-leg operator")
    if a == b:
        raise ValueError("legs must be distinct")
    _check_leg(a, k)
    _check_leg(b, k)
    others = [p for p in range(k) if p not in (a - 1, b - 1)]
    out = {}
    for rest in itertools.product(range(C.n), repeat=k - 2):
        for ((i1, i2), (j1, j2)), c in C.entries.items():
            I = [0] * k
            J = [0] * k
            for p, v in zip(others, rest):
                I[p] = J[p] = v
            I[a - 1], I[b - 1] = i1, i2
            J[a - 1], J[b - 1] = j1, j2
            out[(tuple(I), tuple(J))] = c
    return TensorOp._raw(C.n, k, out)


def partial_transpose(X: TensorOp, a: int) -> TensorOp:
    _check_leg(a, X.k)
    p = a - 1
    out = {}
    for (I, J), c in X.entries.items():
        I2 = I[:p] + (J[p],) + I[p + 1:]
        J2 = J[:p] + (I[p],) + J[p + 1:]
        out[(I2, J2)] = c
    return TensorOp._raw(X.n, X.k, out)


def partial_trace(X: TensorOp, legs):
    """Contract the given legs. Tracing every leg returns the scalar."""
    legs = sorted(set(legs))
    if not legs:
        raise ValueError("no legs to trace")
    for a in legs:
        _check_leg(a, X.k)
    pos = [a - 1 for a in legs]
    keep = [p for p in range(X.k) if p not in pos]
    out: dict = {}
    for (I, J), c in X.entries.items():
        if all(I[p] == J[p] for p in pos):
            key = (tuple(I[p] for p in keep), tuple(J[p] for p in keep))
            out[key] = out[key] + c if key in out else c
    if not keep:
        return out.get(((), ()), 0)
    return TensorOp(X.n, len(keep), out)


def d_matrix(n: int, field=SYMBOLIC) -> TensorOp:
    """diag(q^{n-1}, q^{n-3}, ..., q^{-n+1})."""
    return TensorOp(n, 1, {((i,), (i,)): field.qpow(n - 2 * i - 1) for i in range(n)})


def r_two_param(n: int, field=SYMBOLIC, vars=(0, 1), nvars: int = 2, mutate: bool = False) -> TensorOp:
    """R(u, v) with u, v the MPoly variables ``vars`` in an ``nvars`` ring.

    ``mutate=True`` swaps u and v in the i<j off-diagonal term; this breaks
    the Yang-Baxter equation and serves as a mutation control.
    """
    if n < 2:
        raise ValueError("R(u,v) needs n >= 2")
    u = MPoly.var(nvars, vars[0], field.one)
    v = MPoly.var(nvars, vars[1], field.one)
    qi, q = field.qpow(-1), field.qpow(1)
    c = qi - q
    ent = {}
    for i in range(n):
        for j in range(n):
            if i == j:
                ent[((i, i), (i, i))] = u * qi - v * q
            else:
                ent[((i, j), (i, j))] = u - v
                if i > j:
                    ent[((i, j), (j, i))] = u * c
                else:
                    ent[((i, j), (j, i))] = (u if mutate else v) * c
    return TensorOp(n, 2, ent)


def r_bar(n: int, field=SYMBOLIC) -> TensorOp:
    """R(x, 1)/(q^{-1}x - q) with entries in Q(q)(x)."""
    R = r_two_param(n, field)
    den = UPoly([-field.qpow(1), field.qpow(-1)], field)
    out = {}
    for key, p in R.entries.items():
        num = [field.zero, field.zero]
        for (a, b), c in p.terms.items():
            num[a] = num[a] + c
        out[key] = RatFuncX(UPoly(num, field), den)
    return TensorOp(n, 2, out)


def r_full(n: int, order: int, field=SYMBOLIC, perturb_f1=None) -> TensorOp:
    """R(x) = f(x) Rbar(x) with entries expanded in FPS to ``order``."""
    if order < 1:
        raise ValueError("order must be at least 1")
    f = f_series(n, order, field, perturb_f1=perturb_f1)
    return r_bar(n, field).map(lambda r: f * r.to_fps(order))


def q_permutation(n: int, field=SYMBOLIC, plain: bool = False) -> TensorOp:
    """P^q; with ``plain=True`` the ordinary flip operator P."""
    ent = {}
    for i in range(n):
        for j in range(n):
            if i == j:
                c = field.one
            elif plain:
                c = field.one
            else:
                c = field.qpow(1) if i > j else field.qpow(-1)
            ent[((i, j), (j, i))] = c
    return TensorOp(n, 2, ent)


def plain_permutation(n: int, field=SYMBOLIC) -> TensorOp:
    return q_permutation(n, field, plain=True)


def _as_one_line(sigma) -> tuple[int, ...]:
    s = tuple(sigma)
    if sorted(s) != list(range(1, len(s) + 1)):
        raise ValueError(f"{sigma!r} is not a permutation of 1..{len(s)}")
    return s


def reduced_word(sigma) -> list[int]:
    """Reduced word i_1..i_l with sigma = s_{i_1}...s_{i_l} (bubble sort)."""
    w = list(_as_one_line(sigma))
    swaps = []
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if w[i] > w[i + 1]:
                w[i], w[i + 1] = w[i + 1], w[i]
                swaps.append(i + 1)
                changed = True
    return swaps[::-1]


def perm_action(sigma, n: int, field=SYMBOLIC, plain: bool = False, word=None) -> TensorOp:
    """P^q_sigma as the product of adjacent P^q_{i,i+1} along a reduced word.

    ``word`` may supply an explicit reduced word (used to test independence
    from the decomposition).
    """
    s = _as_one_line(sigma)
    k = len(s)
    w = reduced_word(s) if word is None else list(word)
    P = q_permutation(n, field, plain)
    op = identity(n, k, field.one)
    for i in w:
        op = op * embed_two_leg(P, i, i + 1, k)
    return op


def _sign(sigma) -> int:
    return -1 if len(reduced_word(sigma)) % 2 else 1


def antisymmetrizer(n: int, k: int, field=SYMBOLIC, plain: bool = False) -> TensorOp:
    """A^(k) = (1/k!) sum_sigma sgn(sigma) P^q_sigma."""
    if k < 1:
        raise ValueError("k must be at least 1")
    P = q_permutation(n, field, plain)
    adj = [embed_two_leg(P, i, i + 1, k) for i in range(1, k)]
    # breadth-first over the weak order: P_{w s_i} = P_w P_i when l(w s_i) > l(w)
    ident = tuple(range(1, k + 1))
    level = {ident: identity(n, k, field.one)}
    total = identity(n, k, field.one)
    sign = 1
    seen = {ident}
    while level:
        sign = -sign
        nxt = {}
        for w, op in level.items():
            for i in range(1, k):
                if w[i - 1] < w[i]:
                    w2 = w[:i - 1] + (w[i], w[i - 1]) + w[i + 1:]
                    if w2 not in seen:
                        seen.add(w2)
                        nxt[w2] = op * adj[i - 1]
        for op in nxt.values():
            total = total + (op if sign > 0 else -op)
        level = nxt
    inv = field.one / factorial(k)
    return total.map(lambda c: c * inv)


def _one_leg_power(D: TensorOp, k: int) -> TensorOp:
    op = None
    for a in range(1, k + 1):
        e = embed_one_leg(D, a, k)
        op = e if op is None else op * e
    return op


def fusion_check(n: int, k: int, field=SYMBOLIC, plain: bool = False):
    """Compare the ordered R-product at v_a = z q^{-2a+2} with the
    normalised antisymmetrizer.

    Returns ``(ok, residual)`` where the residual is a TensorOp of
    polynomials in z. ``plain=True`` replaces P^q by P in A^(k) as a
    mutation control.
    """
    if k < 2:
        raise ValueError("fusion needs k >= 2")
    R = r_two_param(n, field)
    prod = identity(n, k, MPoly.const(1, field.one))
    for a in range(1, k + 1):
        for b in range(a + 1, k + 1):
            images = [(field.qpow(-2 * a + 2), 1), (field.qpow(-2 * b + 2), 1)]
            Rab = R.map(lambda p: p.substitute(images))
            prod = prod * embed_two_leg(Rab, a, b, k)
    scal = field.one * factorial(k)
    for a in range(k):
        for b in range(a + 1, k):
            scal = scal * (field.qpow(-2 * a) - field.qpow(-2 * b))
    zpow = MPoly(1, {(k * (k - 1) // 2,): scal})
    rhs = antisymmetrizer(n, k, field, plain).map(lambda c: zpow * c)
    res = prod - rhs
    return res.is_zero(), res


def ybe_residual(n: int, field=SYMBOLIC, mutate: bool = False) -> TensorOp:
    """R12(u,v) R13(u,w) R23(v,w) - R23(v,w) R13(u,w) R12(u,v)."""
    R12 = embed_two_leg(r_two_param(n, field, (0, 1), 3, mutate), 1, 2, 3)
    R13 = embed_two_leg(r_two_param(n, field, (0, 2), 3, mutate), 1, 3, 3)
    R23 = embed_two_leg(r_two_param(n, field, (1, 2), 3, mutate), 2, 3, 3)
    return R12 * R13 * R23 - R23 * R13 * R12


def _scalar_inverse(M: TensorOp, field) -> TensorOp:
    """Gauss-Jordan inverse of a TensorOp with field entries."""
    idx = list(itertools.product(range(M.n), repeat=M.k))
    pos = {I: a for a, I in enumerate(idx)}
    N = len(idx)
    A = [[field.zero] * (2 * N) for _ in range(N)]
    for (I, J), c in M.entries.items():
        A[pos[I]][pos[J]] = c
    for a in range(N):
        A[a][N + a] = field.one
    for col in range(N):
        piv = next((r for r in range(col, N) if A[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        A[col], A[piv] = A[piv], A[col]
        inv = field.one / A[col][col]
        A[col] = [x * inv for x in A[col]]
        for r in range(N):
            if r != col and A[r][col]:
                t = A[r][col]
                A[r] = [x - t * y for x, y in zip(A[r], A[col])]
    out = {}
    for a in range(N):
        for b in range(N):
            if A[a][N + b]:
                out[(idx[a], idx[b])] = A[a][N + b]
    return TensorOp(M.n, M.k, out)


def invert_fps_op(M: TensorOp, order: int, field=SYMBOLIC) -> TensorOp:
    """Inverse of an operator with FPS entries: M0^{-1} sum_t (-M' M0^{-1})^t."""
    M0 = TensorOp(M.n, M.k, {key: s.coefficient(0, field.zero) for key, s in M.entries.items()})
    M0inv = _scalar_inverse(M0, field).map(lambda c: FPS({0: c}, order))
    Mp = M.map(lambda s: FPS({e: c for e, c in s.coeffs.items() if e > 0}, order))
    step = -(Mp * M0inv)
    acc = identity(M.n, M.k, FPS({0: field.one}, order))
    term = acc
    for _ in range(1, order):
        term = term * step
        if term.is_zero():
            break
        acc = acc + term
    return M0inv * acc


def crossing_residuals(n: int, order: int, field=SYMBOLIC, perturb_f1=None):
    """Residuals of both crossing relations, as TensorOps of FPS in x."""
    R = r_full(n, order, field, perturb_f1)
    Rinv = invert_fps_op(R, order, field)
    Rsh = R.map(lambda s: s.scale_arg(field.qpow(2 * n)))
    D = d_matrix(n, field).map(lambda c: FPS({0: c}, order))
    D1 = embed_one_leg(D, 1, 2)
    D2 = embed_one_leg(D, 2, 2)
    res2 = partial_transpose(Rinv, 2) * D2 * partial_transpose(Rsh, 2) - D2
    res1 = partial_transpose(Rsh, 1) * D1 * partial_transpose(Rinv, 1) - D1
    return res1, res2


def _swap_legs(C: TensorOp) -> TensorOp:
    return TensorOp(C.n, 2, {((I[1], I[0]), (J[1], J[0])): c for (I, J), c in C.entries.items()})


def unitarity_residual(n: int, field=SYMBOLIC) -> TensorOp:
    """Rbar(1/x) Rbar_21(x) - 1 with entries in Q(q)(x)."""
    Rb = r_bar(n, field)
    lhs = Rb.map(lambda r: r.invert_arg()) * _swap_legs(Rb)
    one = RatFuncX(UPoly([field.one], field))
    return lhs - identity(n, 2, one)


def expected_antisym_trace(n: int, k: int) -> int:
    return comb(n, k)
