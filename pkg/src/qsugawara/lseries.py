"""Generating matrices L^{+/-}(z), inversion of L^-(z), quantum minors and
quantum determinants.

Series in the spectral variable z are represented by a single graded
``AlgElem``: a word's power of z is its l+ depth minus its l- degree, so
the z^m coefficient is the homogeneous component of degree m.
``ZSeries`` is the explicit coefficient view used for output and windows.
"""

from __future__ import annotations

import itertools

from .rll import AlgElem, Algebra

__all__ = [
    "ZSeries",
    "l_matrix",
    "mat_mul",
    "mat_shift",
    "mat_scale_cols",
    "l_minus_inverse",
    "l_minus_inverse_via_minors",
    "perm_length",
    "quantum_minor",
    "qdet",
    "series_inverse",
]


class ZSeries:
    """Coefficients {m: c} of z^m for m in the closed window [lo, hi]."""

    __slots__ = ("coeffs", "lo", "hi")

    def __init__(self, coeffs: dict, lo: int, hi: int):
        self.lo, self.hi = lo, hi
        self.coeffs = {m: c for m, c in coeffs.items() if lo <= m <= hi and c}

    @classmethod
    def from_graded(cls, x, lo: int, hi: int) -> "ZSeries":
        return cls({m: x.zpart(m) for m in range(lo, hi + 1)}, lo, hi)

    def __getitem__(self, m):
        if not (self.lo <= m <= self.hi):
            raise IndexError(f"z^{m} outside the window [{self.lo}, {self.hi}]")
        return self.coeffs.get(m, 0)

    def window(self):
        return range(self.lo, self.hi + 1)

    def __eq__(self, other):
        if not isinstance(other, ZSeries):
            return NotImplemented
        if (self.lo, self.hi) != (other.lo, other.hi):
            return False
        return all(_is_zero(self[m] - other[m]) for m in self.window())

    def diff(self, other) -> dict:
        """{m: self[m] - other[m]} for the nonzero differences."""
        out = {}
        for m in range(max(self.lo, other.lo), min(self.hi, other.hi) + 1):
            d = self[m] - other[m]
            if not _is_zero(d):
                out[m] = d
        return out

    def to_text(self) -> str:
        lines = []
        for m in self.window():
            c = self.coeffs.get(m)
            text = c.to_text() if hasattr(c, "to_text") else str(c if c is not None else 0)
            lines.append(f"z^{m}: {text}")
        return "\n".join(lines)

    def __repr__(self):
        return f"ZSeries[{self.lo},{self.hi}]({len(self.coeffs)} nonzero)"


def _is_zero(x) -> bool:
    if isinstance(x, int):
        return x == 0
    return not x


def l_matrix(alg: Algebra, sign, depth: int | None = None):
    """n x n matrix of graded series l^{+/-}_ij(z) with modes r < depth.

    Default depth: d_plus + 1 for L+ and p_minus for L-.
    """
    s = 1 if sign in ("+", 1) else -1
    if depth is None:
        depth = alg.trunc.d_plus + 1 if s > 0 else alg.trunc.p_minus
    if depth < 1:
        raise ValueError("depth must be >= 1")
    n = alg.n
    M = [[alg.zero() for _ in range(n)] for _ in range(n)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            acc = alg.zero()
            for r in range(depth):
                acc = acc + alg.gen(s, i, j, r)
            M[i - 1][j - 1] = acc
    return M


def mat_mul(A, B):
    n = len(A)
    m = len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = None
            for k in range(len(B)):
                if A[i][k] and B[k][j]:
                    t = A[i][k] * B[k][j]
                    acc = t if acc is None else acc + t
            row.append(acc if acc is not None else A[i][0] * 0)
        out.append(row)
    return out


def mat_shift(M, c: int):
    """Entrywise z -> z q^c."""
    return [[x.shift(c) for x in row] for row in M]


def mat_scale_cols(M, scal):
    """Right multiplication by diag(scal)."""
    return [[x.scale(scal[j]) for j, x in enumerate(row)] for row in M]


def _identity(alg, n):
    return [[alg.one() if i == j else alg.zero() for j in range(n)] for i in range(n)]


def l_minus_inverse(alg: Algebra, depth: int | None = None):
    """L^-(z)^{-1} by inverting the triangular constant term and a Neumann
    series in z^{-1}. Exact for l- degree < p_minus."""
    n = alg.n
    if depth is None:
        depth = alg.trunc.p_minus
    L = l_matrix(alg, "-", depth)
    L0 = [[x.zpart(0) for x in row] for row in L]
    N = [[L[i][j] - L0[i][j] for j in range(n)] for i in range(n)]
    # L0 is lower triangular with torus diagonal; forward substitution
    M0 = [[alg.zero() for _ in range(n)] for _ in range(n)]
    for j in range(n):
        for i in range(n):
            acc = alg.one() if i == j else alg.zero()
            for k in range(i):
                if L0[i][k]:
                    acc = acc - L0[i][k] * M0[k][j]
            T = [0] * n
            T[i] = 1
            M0[i][j] = alg.torus(T) * acc
    step = mat_mul(M0, N)
    step = [[-x for x in row] for row in step]
    acc = _identity(alg, n)
    term = acc
    for _ in range(1, depth):
        term = mat_mul(term, step)
        if not any(x for row in term for x in row):
            break
        acc = [[acc[i][j] + term[i][j] for j in range(n)] for i in range(n)]
    return mat_mul(acc, M0)


def series_inverse(x: AlgElem, depth: int | None = None) -> AlgElem:
    """Inverse of a graded series whose z^0 part is a torus monomial and
    whose other parts have negative z-degree (a series in z^{-1})."""
    alg = x.alg
    c0 = x.zpart(0)
    if len(c0.terms) != 1:
        raise ZeroDivisionError("constant term is not an invertible monomial")
    (T, w), c = next(iter(c0.terms.items()))
    if w:
        raise ZeroDivisionError("constant term is not an invertible monomial")
    inv0 = alg.torus(tuple(-e for e in T)).scale(alg.one_c / c)
    rest = x - c0
    if any(d > 0 for d in rest.zdegrees()):
        raise ValueError("series has positive powers of z")
    step = -(inv0 * rest)
    depth = alg.trunc.p_minus if depth is None else depth
    acc = alg.one()
    term = acc
    for _ in range(1, depth + 1):
        term = term * step
        if not term:
            break
        acc = acc + term
    return acc * inv0


def perm_length(seq) -> int:
    """Number of inversions of a sequence."""
    return sum(1 for a, b in itertools.combinations(seq, 2) if a > b)


def quantum_minor(alg: Algebra, sign, rows, cols, z_shift: int = 0, L=None) -> AlgElem:
    """The quantum minor L(z)^{rows}_{cols} as a graded series.

    Rows in increasing order use the row-permutation expansion; otherwise
    rows are sorted and the antisymmetry factor (-q)^{l(tau)} is applied.
    ``L`` may supply the matrix (e.g. L+(z) D); ``z_shift`` substitutes
    z -> z q^{z_shift}.
    """
    rows, cols = list(rows), list(cols)
    k = len(rows)
    if len(cols) != k:
        raise ValueError("rows and columns must have equal length")
    if any(not (1 <= a <= alg.n) for a in rows + cols):
        raise ValueError("index out of range")
    if len(set(rows)) < k or len(set(cols)) < k:
        return alg.zero()
    if L is None:
        L = l_matrix(alg, sign)
    F = alg.field
    srt = sorted(rows)
    tau_len = perm_length(rows)
    shifted = {}

    def entry(a, b, pos):
        key = (a, b, pos)
        if key not in shifted:
            shifted[key] = L[a - 1][b - 1].shift(z_shift - 2 * pos)
        return shifted[key]

    total = alg.zero()
    for sigma in itertools.permutations(range(k)):
        coef = (-F.q) ** (-perm_length(sigma)) if perm_length(sigma) else F.one
        prod = alg.one()
        for pos in range(k):
            prod = prod * entry(srt[sigma[pos]], cols[pos], pos)
            if not prod:
                break
        if prod:
            total = total + prod.scale(coef)
    if tau_len:
        total = total.scale((-F.q) ** tau_len)
    return total


def qdet(alg: Algebra, sign, z_shift: int = 0, L=None) -> AlgElem:
    rng = list(range(1, alg.n + 1))
    return quantum_minor(alg, sign, rng, rng, z_shift, L)


def l_minus_inverse_via_minors(alg: Algebra):
    """[L^-(z)^{-1}]_ij = (-q)^{j-i} qdet L^-(zq^{2n-2})^{-1}
    L^-(zq^{2n-2})^{1..^j..n}_{1..^i..n} (independent route)."""
    n = alg.n
    F = alg.field
    L = l_matrix(alg, "-")
    sh = 2 * n - 2
    dinv = series_inverse(qdet(alg, "-", sh, L))
    out = [[None] * n for _ in range(n)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            rows = [a for a in range(1, n + 1) if a != j]
            cols = [b for b in range(1, n + 1) if b != i]
            if rows:
                minor = quantum_minor(alg, "-", rows, cols, sh, L)
            else:
                minor = alg.one()
            out[i - 1][j - 1] = (dinv * minor).scale((-F.q) ** (j - i))
    return out
