"""The quantum affine algebra at the critical level as a rewrite system.

Generators are ``Gen(sign, i, j, r)`` with ``sign`` in {+1, -1}, 1-based
``i, j`` and mode magnitude ``r >= 0``: ``Gen(+1, i, j, r)`` is l+_ij[-r]
and ``Gen(-1, i, j, r)`` is l-_ij[r].

Elements are stored in a torus-left normal form.  The invertible zero
modes l+_ii[0] = l-_ii[0]^{-1} are collected into an integer exponent
vector ``T`` (negative entries are powers of l-_ii[0]) placed to the left
of an ordered word of the remaining generators.  Because every generator
is an eigenvector for conjugation by the torus, this is just a rescaling
of the ordered monomial basis.

Rewrite rules are derived from the defining relations, not typed in:

* like-sign pairs: each coefficient of u^A v^B in R(u,v) L1(u) L2(v) =
  L2(v) L1(u) R(u,v) is a linear relation between products of two
  generators.  For fixed sign, row multiset, column multiset and total mode
  the relations form a small linear system that is solved exactly for the
  out-of-order products;
* mixed pairs: expanding the relation between L+ and L- in x = u/v gives
  a recursion expressing l-[s] l+[-r] through ordered products and
  previously computed lower pairs.
"""

from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass
from typing import NamedTuple

from .coeff import FPS, SYMBOLIC
from .tensor import TensorOp, _scalar_inverse, r_full

__all__ = [
    "Gen",
    "TruncPolicy",
    "Algebra",
    "AlgElem",
    "BudgetExceeded",
    "RewriteError",
    "STANDARD",
    "OPPOSITE",
    "reset_drop_tally",
    "drop_tally",
]

STANDARD = "standard"
OPPOSITE = "opposite"


_DROP_TALLY = [0]


def reset_drop_tally() -> None:
    """Zero the process-wide count of truncated terms."""
    _DROP_TALLY[0] = 0


def drop_tally() -> int:
    return _DROP_TALLY[0]


class BudgetExceeded(RuntimeError):
    """Raised when rewriting exceeds the configured resource budget."""


class RewriteError(RuntimeError):
    """Raised when the extracted relations are inconsistent or insufficient."""


class Gen(NamedTuple):
    sign: int
    i: int
    j: int
    r: int

    def __str__(self):
        s = "+" if self.sign > 0 else "-"
        mode = -self.r if self.sign > 0 else self.r
        return f"l{s}_{self.i}{self.j}[{mode}]"

    @property
    def is_zero(self) -> bool:
        if self.r:
            return False
        return self.i > self.j if self.sign > 0 else self.i < self.j

    @property
    def is_torus(self) -> bool:
        return self.r == 0 and self.i == self.j

    @property
    def zdeg(self) -> int:
        return self.r if self.sign > 0 else -self.r


@dataclass(frozen=True)
class TruncPolicy:
    """Truncation bounds.

    ``p_minus``: words whose total l- mode degree is >= p_minus are dropped.
    ``d_plus``: words whose total l+ mode depth exceeds d_plus are dropped.
    ``series_order``: order used when expanding structure series.
    """

    p_minus: int = 4
    d_plus: int = 6
    series_order: int = 8

    def __post_init__(self):
        if min(self.p_minus, self.d_plus, self.series_order) < 1:
            raise ValueError("truncation bounds must be >= 1")


class Algebra:
    """U_q(gl_n^) at q^c = q^{-n} with a chosen ordering and truncation.

    Holds rule caches; elements refer back to their algebra.
    """

    def __init__(self, n: int, field=SYMBOLIC, ordering: str = STANDARD,
                 trunc: TruncPolicy | None = None, perturb_f1=None,
                 max_word: int = 40, max_terms: int = 2_000_000):
        if n < 1:
            raise ValueError("n must be positive")
        if ordering not in (STANDARD, OPPOSITE):
            raise ValueError(f"unknown ordering {ordering!r}")
        self.n = n
        self.field = field
        self.ordering = ordering
        self.trunc = trunc or TruncPolicy()
        self.perturb_f1 = perturb_f1
        self.max_word = max_word
        self.max_terms = max_terms
        self.T0 = (0,) * n
        self.zero_c = field.zero
        self.one_c = field.one
        self.drops = 0
        self._key: dict = {}
        self._wt: dict = {}
        self._rules: dict = {}
        self._solved: set = set()
        self._insert: dict = {}
        self._U: dict = {}
        self._Rt: list = []
        self._R0inv = None
        self.gamma_pow = lambda t: field.qpow(-n * t)
        if sys.getrecursionlimit() < 20000:
            sys.setrecursionlimit(20000)

    # ------------------------------------------------------------------
    # generators, ordering, weights

    def compatible(self, other: "Algebra") -> bool:
        return self.n == other.n and self.field == other.field

    def key(self, g: Gen):
        k = self._key.get(g)
        if k is None:
            if g.is_zero:
                raise ValueError(f"{g} is a zero generator")
            plus_fwd = (g.j - g.i, g.i, -g.r)
            plus_opp = (g.i - g.j, g.i, -g.r)
            minus_fwd = (g.i - g.j, g.i, g.r)
            minus_opp = (g.j - g.i, g.i, g.r)
            if g.sign > 0:
                k = (0,) + (plus_fwd if self.ordering == STANDARD else plus_opp)
            else:
                k = (1,) + (minus_fwd if self.ordering == STANDARD else minus_opp)
            self._key[g] = k
        return k

    def compare(self, a: Gen, b: Gen) -> int:
        """-1, 0 or 1 according to the generator ordering."""
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def weight(self, word) -> tuple:
        w = self._wt.get(word)
        if w is None:
            v = [0] * self.n
            for g in word:
                v[g.i - 1] += 1
                v[g.j - 1] -= 1
            w = tuple(v)
            self._wt[word] = w
        return w

    def qdot(self, T, wt):
        e = 0
        for a, b in zip(T, wt):
            if a and b:
                e += a * b
        return self.field.qpow(e) if e else self.one_c

    def is_ordered(self, word) -> bool:
        return all(self.key(a) <= self.key(b) for a, b in zip(word, word[1:]))

    # ------------------------------------------------------------------
    # canonical form of a product of two generators

    def _pair_canon(self, g1: Gen, g2: Gen):
        """Return ``(kind, data, factor)`` for the product g1*g2, or None if
        it vanishes.  kind is 'basis' with data (T, word) or 'var' with data
        (g1, g2) for an out-of-order pair."""
        if g1.is_zero or g2.is_zero:
            return None
        t1, t2 = g1.is_torus, g2.is_torus
        if t1 or t2:
            T = [0] * self.n
            word = []
            factor = self.one_c
            if t1:
                T[g1.i - 1] += g1.sign
            else:
                word.append(g1)
            if t2:
                T[g2.i - 1] += g2.sign
                if not t1:
                    # g1 T(e) = q^{e.wt(g1)} T(e) g1
                    e = [0] * self.n
                    e[g2.i - 1] = g2.sign
                    factor = self.qdot(e, self.weight((g1,)))
            else:
                word.append(g2)
            return "basis", (tuple(T), tuple(word)), factor
        if self.key(g1) <= self.key(g2):
            return "basis", (self.T0, (g1, g2)), self.one_c
        return "var", (g1, g2), self.one_c

    # ------------------------------------------------------------------
    # like-sign rules

    def _r_entries(self):
        """Nonzero entries of R(u,v) as {(a,b): [((e,f), alpha, beta)]} with
        entry alpha*u + beta*v (1-based)."""
        F = self.field
        qi, q = F.qpow(-1), F.qpow(1)
        c = qi - q
        rows: dict = {}
        cols: dict = {}
        for a in range(1, self.n + 1):
            for b in range(1, self.n + 1):
                ents = []
                if a == b:
                    ents.append(((a, b), qi, -q))
                else:
                    ents.append(((a, b), F.one, -F.one))
                    if a > b:
                        ents.append(((b, a), c, F.zero))
                    else:
                        ents.append(((b, a), F.zero, c))
                for (e, f), al, be in ents:
                    rows.setdefault((a, b), []).append(((e, f), al, be))
                    cols.setdefault((e, f), []).append(((a, b), al, be))
        return rows, cols

    def _gen_at(self, sign, i, j, power):
        r = power if sign > 0 else -power
        if r < 0:
            return None
        g = Gen(sign, i, j, r)
        return None if g.is_zero else g

    def _solve_component(self, sign, rows, cols, D):
        comp = (sign, rows, cols, D)
        if comp in self._solved:
            return
        if not hasattr(self, "_rrows"):
            self._rrows, self._rcols = self._r_entries()
        F = self.field
        sig = 1 if sign > 0 else -1
        tot = sig * D + 1
        Arange = range(0, D + 2) if sign > 0 else range(-D, 2)
        eqs = []
        for (a, b) in sorted(set(itertools.permutations(rows))):
            for (c, d) in sorted(set(itertools.permutations(cols))):
                for A in Arange:
                    B = tot - A
                    eq: dict = {}

                    def add(coef, g1, g2):
                        if not coef or g1 is None or g2 is None:
                            return
                        res = self._pair_canon(g1, g2)
                        if res is None:
                            return
                        kind, data, fac = res
                        key = (kind, data)
                        val = coef * fac
                        eq[key] = eq[key] + val if key in eq else val

                    for (e, f), al, be in self._rrows[(a, b)]:
                        add(al, self._gen_at(sign, e, c, A - 1), self._gen_at(sign, f, d, B))
                        add(be, self._gen_at(sign, e, c, A), self._gen_at(sign, f, d, B - 1))
                    for (e, f), al, be in self._rcols[(c, d)]:
                        add(-al, self._gen_at(sign, b, f, B), self._gen_at(sign, a, e, A - 1))
                        add(-be, self._gen_at(sign, b, f, B - 1), self._gen_at(sign, a, e, A))
                    eq = {k: v for k, v in eq.items() if v}
                    if eq:
                        eqs.append(eq)
        vars_ = sorted({k[1] for eq in eqs for k in eq if k[0] == "var"},
                       key=lambda p: (self.key(p[0]), self.key(p[1])))
        bases = sorted({k[1] for eq in eqs for k in eq if k[0] == "basis"},
                       key=lambda b: (b[0], tuple(self.key(g) for g in b[1])))
        cols_ = [("var", v) for v in vars_] + [("basis", b) for b in bases]
        nv = len(vars_)
        mat = [[eq.get(cidx, F.zero) for cidx in cols_] for eq in eqs]
        # Gauss-Jordan on the variable block
        piv_row = {}
        r = 0
        for c in range(nv):
            p = next((i for i in range(r, len(mat)) if mat[i][c]), None)
            if p is None:
                raise RewriteError(
                    f"relations do not determine {vars_[c][0]}*{vars_[c][1]}")
            mat[r], mat[p] = mat[p], mat[r]
            inv = F.one / mat[r][c]
            mat[r] = [x * inv for x in mat[r]]
            for i in range(len(mat)):
                if i != r and mat[i][c]:
                    t = mat[i][c]
                    mat[i] = [x - t * y for x, y in zip(mat[i], mat[r])]
            piv_row[c] = r
            r += 1
        for i in range(r, len(mat)):
            if any(mat[i]):
                raise RewriteError("inconsistent relations among ordered monomials "
                                   f"in component {comp}")
        for c, v in enumerate(vars_):
            row = mat[piv_row[c]]
            rule = {}
            for bi, b in enumerate(bases):
                val = row[nv + bi]
                if val:
                    rule[b] = -val
            self._rules[v] = rule
        self._solved.add(comp)

    # ------------------------------------------------------------------
    # mixed rules

    def _ensure_R(self, t):
        if len(self._Rt) > t:
            return
        order = max(2 * t + 2, 8)
        if self.n == 1:
            # R(x) is the scalar 1 when n = 1
            R = TensorOp(1, 2, {((0, 0), (0, 0)): FPS({0: self.field.one}, order)})
        else:
            R = r_full(self.n, order, self.field, self.perturb_f1)
        Rts = []
        for s in range(order):
            rows = {}
            for (I, J), ser in R.entries.items():
                c = ser.coefficient(s, self.field.zero)
                if c:
                    rows.setdefault((I[0] + 1, I[1] + 1), []).append(((J[0] + 1, J[1] + 1), c))
            Rts.append(rows)
        self._Rt = Rts
        if self._R0inv is None:
            R0 = TensorOp(self.n, 2, {(I, J): s.coefficient(0, self.field.zero)
                                      for (I, J), s in R.entries.items()})
            inv = _scalar_inverse(R0, self.field)
            rows = {}
            for (I, J), c in inv.entries.items():
                rows.setdefault((I[0] + 1, I[1] + 1), []).append(((J[0] + 1, J[1] + 1), c))
            self._R0inv = rows

    def _O(self, r, s):
        """Matrix O[(a,b),(c,d)] = l+_ac[-r] l-_bd[s] in canonical form."""
        out = {}
        n = self.n
        for a, b, c, d in itertools.product(range(1, n + 1), repeat=4):
            g1, g2 = Gen(1, a, c, r), Gen(-1, b, d, s)
            res = self._pair_canon(g1, g2)
            if res is None:
                continue
            _, data, fac = res
            out.setdefault((a, b), {})[(c, d)] = {data: fac}
        return out

    @staticmethod
    def _expr_axpy(acc: dict, coef, expr: dict):
        for k, v in expr.items():
            t = coef * v
            if k in acc:
                s = acc[k] + t
                if s:
                    acc[k] = s
                else:
                    del acc[k]
            elif t:
                acc[k] = t

    def _U_matrix(self, r, s):
        """U[(a,b),(e,f)] = l-_bf[s] l+_ae[-r] in ordered form."""
        key = (r, s)
        if key in self._U:
            return self._U[key]
        self._ensure_R(max(r, s) + 1)
        X: dict = {}
        for t in range(0, min(r, s) + 1):
            g = self.gamma_pow(-t)
            O = self._O(r - t, s - t)
            for ab, rlist in self._Rt[t].items():
                row = X.setdefault(ab, {})
                for gh, rc in rlist:
                    for cd, expr in O.get(gh, {}).items():
                        ent = row.setdefault(cd, {})
                        self._expr_axpy(ent, g * rc, expr)
        for t in range(1, min(r, s) + 1):
            g = self.gamma_pow(t)
            Ut = self._U_matrix(r - t, s - t)
            Rt = self._Rt[t]
            for ab, urow in Ut.items():
                row = X.setdefault(ab, {})
                for gh, expr in urow.items():
                    for cd, rc in Rt.get(gh, ()):
                        ent = row.setdefault(cd, {})
                        self._expr_axpy(ent, -(g * rc), expr)
        U: dict = {}
        for ab, xrow in X.items():
            urow = {}
            for cd, expr in xrow.items():
                if not expr:
                    continue
                for ef, ic in self._R0inv.get(cd, ()):
                    ent = urow.setdefault(ef, {})
                    self._expr_axpy(ent, ic, expr)
            U[ab] = {ef: e for ef, e in urow.items() if e}
        self._U[key] = U
        return U

    def _mixed_rule(self, gm: Gen, gp: Gen) -> dict:
        U = self._U_matrix(gp.r, gm.r)
        return U.get((gp.i, gm.i), {}).get((gp.j, gm.j), {})

    def direct_mixed(self, gm: Gen, gp: Gen) -> dict:
        """l-[s] l+[-r] when one factor is a zero mode (torus or zero)."""
        if gm.is_zero or gp.is_zero:
            return {}
        if gm.is_torus and gp.is_torus:
            T = [0] * self.n
            T[gm.i - 1] -= 1
            T[gp.i - 1] += 1
            return {(tuple(T), ()): self.one_c}
        if gm.is_torus:
            T = [0] * self.n
            T[gm.i - 1] = -1
            return {(tuple(T), (gp,)): self.one_c}
        if gp.is_torus:
            T = [0] * self.n
            T[gp.i - 1] = 1
            return {(tuple(T), (gm,)): self.qdot(T, self.weight((gm,)))}
        raise ValueError("both generators are non-torus")

    def mixed_consistency(self, rmax: int, smax: int) -> list:
        """Compare recursion output with direct zero-mode relations.

        Returns a list of mismatching (l-, l+) pairs; empty means consistent.
        """
        bad = []
        n = self.n
        for r in range(rmax + 1):
            for s in range(smax + 1):
                U = self._U_matrix(r, s)
                for a, b, e, f in itertools.product(range(1, n + 1), repeat=4):
                    gm, gp = Gen(-1, b, f, s), Gen(1, a, e, r)
                    if not (gm.is_zero or gp.is_zero or gm.is_torus or gp.is_torus):
                        continue
                    got = U.get((a, b), {}).get((e, f), {})
                    if got != self.direct_mixed(gm, gp):
                        bad.append((gm, gp))
        return bad

    # ------------------------------------------------------------------
    # rules and insertion

    def pair_rule(self, x: Gen, y: Gen) -> dict:
        """x*y for an out-of-order pair of non-torus generators, as a dict
        {(T, word): coeff} of ordered terms."""
        rule = self._rules.get((x, y))
        if rule is not None:
            return rule
        if x.sign < 0 < y.sign:
            rule = self._mixed_rule(x, y)
            self._rules[(x, y)] = rule
            return rule
        if x.sign != y.sign:
            raise ValueError(f"{x}*{y} is already ordered")
        if self.key(x) <= self.key(y):
            raise ValueError(f"{x}*{y} is already ordered")
        comp = (x.sign, tuple(sorted((x.i, y.i))), tuple(sorted((x.j, y.j))), x.r + y.r)
        self._solve_component(*comp)
        return self._rules[(x, y)]

    def reorder_pair(self, x: Gen, y: Gen) -> "AlgElem":
        return AlgElem(self, dict(self.pair_rule(x, y)))

    def insert(self, word: tuple, g: Gen) -> dict:
        """Normal form of ``word * g`` for an ordered word and a non-torus
        generator; returns {(T, word): coeff}."""
        memo_key = (word, g)
        res = self._insert.get(memo_key)
        if res is not None:
            return res
        if len(word) >= self.max_word:
            raise BudgetExceeded(f"word length exceeds {self.max_word}")
        if not word or self.key(word[-1]) <= self.key(g):
            res = {(self.T0, word + (g,)): self.one_c}
        else:
            last, prefix = word[-1], word[:-1]
            rule = self.pair_rule(last, g)
            wtp = self.weight(prefix)
            res = {}
            for (T, gens), c in rule.items():
                cur = {(T, prefix): c * self.qdot(T, wtp)}
                for h in gens:
                    nxt: dict = {}
                    for (T1, w), c1 in cur.items():
                        for (T2, w2), c2 in self.insert(w, h).items():
                            k = (tuple(a + b for a, b in zip(T1, T2)), w2)
                            t = c1 * c2
                            nxt[k] = nxt[k] + t if k in nxt else t
                    cur = nxt
                self._expr_axpy(res, self.one_c, cur)
        self._insert[memo_key] = res
        return res

    def mul_words(self, w1: tuple, w2: tuple) -> dict:
        if not w2:
            return {(self.T0, w1): self.one_c}
        if not w1 or self.key(w1[-1]) <= self.key(w2[0]):
            return {(self.T0, w1 + w2): self.one_c}
        cur = {(self.T0, w1): self.one_c}
        for h in w2:
            nxt: dict = {}
            for (T1, w), c1 in cur.items():
                for (T2, ww), c2 in self.insert(w, h).items():
                    k = (tuple(a + b for a, b in zip(T1, T2)), ww)
                    t = c1 * c2
                    if k in nxt:
                        s = nxt[k] + t
                        if s:
                            nxt[k] = s
                        else:
                            del nxt[k]
                    elif t:
                        nxt[k] = t
            cur = nxt
        return cur

    # ------------------------------------------------------------------
    # element construction

    def _keep(self, word) -> bool:
        dm = dp = 0
        for g in word:
            if g.sign > 0:
                dp += g.r
            else:
                dm += g.r
        return dm < self.trunc.p_minus and dp <= self.trunc.d_plus

    def element(self, terms: dict) -> "AlgElem":
        return AlgElem(self, terms)

    def zero(self) -> "AlgElem":
        return AlgElem(self, {})

    def one(self) -> "AlgElem":
        return AlgElem(self, {(self.T0, ()): self.one_c})

    def scalar(self, c) -> "AlgElem":
        return AlgElem(self, {(self.T0, ()): self.field(c)} if c else {})

    def torus(self, T) -> "AlgElem":
        return AlgElem(self, {(tuple(T), ()): self.one_c})

    def gen(self, sign, i: int, j: int, r: int) -> "AlgElem":
        """The generator l+_ij[-r] (sign '+') or l-_ij[r] (sign '-')."""
        s = _sign(sign)
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise ValueError("generator index out of range")
        if r < 0:
            raise ValueError("mode magnitude must be nonnegative")
        g = Gen(s, i, j, r)
        if g.is_zero:
            return self.zero()
        if g.is_torus:
            T = [0] * self.n
            T[i - 1] = s
            return self.torus(T)
        return AlgElem(self, {(self.T0, (g,)): self.one_c})

    def from_word(self, gens) -> "AlgElem":
        """Product of generators given as Gen tuples, normal ordered."""
        out = self.one()
        for g in gens:
            g = Gen(*g)
            out = out * self.gen(g.sign, g.i, g.j, g.r)
        return out

    def convert(self, x: "AlgElem") -> "AlgElem":
        """Re-express an element of a compatible algebra in this ordering."""
        if not self.compatible(x.alg):
            raise ValueError("incompatible algebras")
        out: dict = {}
        for (T, w), c in x.terms.items():
            y = self.torus(T)
            for g in w:
                y = y * self.gen(g.sign, g.i, g.j, g.r)
            self._expr_axpy(out, c, y.terms)
        return AlgElem(self, out)


def _sign(sign) -> int:
    if sign in ("+", 1, "plus"):
        return 1
    if sign in ("-", -1, "minus"):
        return -1
    raise ValueError(f"bad sign {sign!r}")


class AlgElem:
    """Immutable element: {(T, word): coeff} in torus-left normal form."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: Algebra, terms: dict):
        self.alg = alg
        self.terms = {k: v for k, v in terms.items() if v}

    @property
    def normalized(self) -> str:
        return self.alg.ordering

    def _coerce(self, other):
        if isinstance(other, AlgElem):
            if other.alg is not self.alg:
                if not self.alg.compatible(other.alg) or other.alg.ordering != self.alg.ordering:
                    raise ValueError("elements belong to different algebras")
            return other
        return self.alg.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        Algebra._expr_axpy(out, self.alg.one_c, other.terms)
        return AlgElem(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return AlgElem(self.alg, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "AlgElem":
        return AlgElem(self.alg, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, AlgElem):
            return self.scale(other)
        return self.mul(other)

    def mul(self, other: "AlgElem", keep=None) -> "AlgElem":
        """Product with a custom retention predicate on output words
        (default: the algebra's truncation policy)."""
        other = self._coerce(other)
        alg = self.alg
        keep = alg._keep if keep is None else keep
        out: dict = {}
        dropped = 0
        for (T1, w1), c1 in self.terms.items():
            wt1 = alg.weight(w1)
            for (T2, w2), c2 in other.terms.items():
                c = c1 * c2 * alg.qdot(T2, wt1)
                T12 = tuple(a + b for a, b in zip(T1, T2))
                for (T3, w3), c3 in alg.mul_words(w1, w2).items():
                    if not keep(w3):
                        dropped += 1
                        continue
                    k = (tuple(a + b for a, b in zip(T12, T3)), w3)
                    t = c * c3
                    if k in out:
                        s = out[k] + t
                        if s:
                            out[k] = s
                        else:
                            del out[k]
                    elif t:
                        out[k] = t
                if len(out) > alg.max_terms:
                    raise BudgetExceeded(f"more than {alg.max_terms} terms")
        alg.drops += dropped
        _DROP_TALLY[0] += dropped
        return AlgElem(alg, out)

    def __rmul__(self, other):
        return self.scale(other)

    def commutator(self, other) -> "AlgElem":
        return self * other - other * self

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, AlgElem):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # grading helpers
    @staticmethod
    def word_zdeg(word) -> int:
        return sum(g.zdeg for g in word)

    def shift(self, c: int) -> "AlgElem":
        """Substitute z -> z q^c in a graded series element."""
        if c == 0:
            return self
        F = self.alg.field
        return AlgElem(self.alg, {k: v * F.qpow(c * self.word_zdeg(k[1]))
                                  for k, v in self.terms.items()})

    def zpart(self, m: int) -> "AlgElem":
        return AlgElem(self.alg, {k: v for k, v in self.terms.items()
                                  if self.word_zdeg(k[1]) == m})

    def zdegrees(self) -> set:
        return {self.word_zdeg(k[1]) for k in self.terms}

    def filter(self, pred) -> "AlgElem":
        return AlgElem(self.alg, {k: v for k, v in self.terms.items() if pred(k[0], k[1])})

    def minus_degree_below(self, p: int) -> "AlgElem":
        return self.filter(lambda T, w: sum(g.r for g in w if g.sign < 0) < p)

    def map_coeffs(self, fn) -> "AlgElem":
        return AlgElem(self.alg, {k: fn(v) for k, v in self.terms.items()})

    def sorted_terms(self):
        key = self.alg.key
        return sorted(self.terms.items(),
                      key=lambda kv: (kv[0][0], tuple(key(g) for g in kv[0][1])))

    def to_text(self) -> str:
        """Canonical text: sorted terms, exact coefficients."""
        if not self.terms:
            return "0"
        parts = []
        for (T, w), c in self.sorted_terms():
            fac = []
            for i, e in enumerate(T, start=1):
                if e > 0:
                    fac.append(f"l+_{i}{i}[0]" + (f"^{e}" if e > 1 else ""))
                elif e < 0:
                    fac.append(f"l-_{i}{i}[0]" + (f"^{-e}" if e < -1 else ""))
            fac.extend(str(g) for g in w)
            mono = "*".join(fac) if fac else "1"
            parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return self.to_text()
