"""The vacuum module at the critical level.

Vectors are combinations of ordered l+ words (no torus letters) applied to
the vacuum vector.  An algebra element acts by exact multiplication in the
rewrite engine followed by the quotient map: the torus acts on W|0> through
its weight and any surviving l- letter kills the vector.
"""

from __future__ import annotations

import itertools

from .results import CheckResult
from .rll import AlgElem, Algebra, Gen, TruncPolicy
from .sugawara import ell_bar_series, ell_series

__all__ = [
    "VacVector",
    "to_vacuum",
    "act",
    "spanning_words",
    "generator_modes",
    "centrality_check",
    "engine_centrality_check",
    "invariance_check",
    "vacuum_agreement_check",
    "commutativity_check",
]


class VacVector:
    """{ordered l+ word: coefficient}; the empty word is the vacuum."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: Algebra, terms: dict):
        self.alg = alg
        self.terms = {w: c for w, c in terms.items() if c}

    @classmethod
    def vacuum(cls, alg: Algebra) -> "VacVector":
        return cls(alg, {(): alg.one_c})

    @classmethod
    def basis(cls, alg: Algebra, word) -> "VacVector":
        return cls(alg, {tuple(word): alg.one_c})

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return VacVector(self.alg, out)

    def __neg__(self):
        return VacVector(self.alg, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return VacVector(self.alg, {w: v * c for w, v in self.terms.items()})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, VacVector):
            return not (self - other)
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def depths(self) -> set:
        return {sum(g.r for g in w) for w in self.terms}

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        key = self.alg.key
        items = sorted(self.terms.items(), key=lambda kv: tuple(key(g) for g in kv[0]))
        return " + ".join(f"({c})*" + ("*".join(map(str, w)) if w else "") + "|0>"
                          for w, c in items)

    def __repr__(self):
        return self.to_text()


def _no_minus(word) -> bool:
    return all(g.sign > 0 for g in word)


def to_vacuum(x: AlgElem) -> VacVector:
    """Image x|0> of a normal-ordered element."""
    alg = x.alg
    out: dict = {}
    for (T, w), c in x.terms.items():
        if not _no_minus(w):
            continue
        if any(T):
            c = c * alg.qdot(tuple(-e for e in T), alg.weight(w))
        out[w] = out[w] + c if w in out else c
    return VacVector(alg, out)


def _minus_degree(w) -> int:
    return sum(g.r for g in w if g.sign < 0)


def _cache(alg) -> dict:
    c = getattr(alg, "_vac_cache", None)
    if c is None:
        c = alg._vac_cache = {"minus": {}, "plus": {}}
    return c


def _project(alg, terms: dict, coef, out: dict):
    """Add coef * (normal-ordered terms)|0> into ``out``."""
    for (T, w), c in terms.items():
        if not _no_minus(w):
            continue
        c = c * coef
        if any(T):
            c = c * alg.qdot(tuple(-e for e in T), alg.weight(w))
        out[w] = out[w] + c if w in out else c


def _minus_on_word(alg, M: tuple, W: tuple) -> dict:
    """M W|0> for an ordered l- word M, as {plus word: coeff}."""
    cache = _cache(alg)["minus"]
    key = (M, W)
    res = cache.get(key)
    if res is not None:
        return res
    if not M:
        res = {W: alg.one_c}
    elif sum(g.r for g in M) > sum(g.r for g in W):
        res = {}
    else:
        inner = _minus_on_word(alg, M[1:], W)
        out: dict = {}
        for w2, c in inner.items():
            _project(alg, alg.mul_words((M[0],), w2), c, out)
        res = {w: c for w, c in out.items() if c}
    cache[key] = res
    return res


def _plus_on_word(alg, P: tuple, W: tuple) -> dict:
    cache = _cache(alg)["plus"]
    key = (P, W)
    res = cache.get(key)
    if res is None:
        out: dict = {}
        _project(alg, alg.mul_words(P, W), alg.one_c, out)
        res = cache[key] = {w: c for w, c in out.items() if c}
    return res


def _split(alg, x: AlgElem) -> dict:
    """{minus word M: [(T, plus word P, c)]} for x = sum c T P M."""
    groups: dict = {}
    for (T, w), c in x.terms.items():
        cut = next((i for i, g in enumerate(w) if g.sign < 0), len(w))
        groups.setdefault(w[cut:], []).append((T, w[:cut], c))
    return groups


def act(x: AlgElem, v: VacVector, cache: dict | None = None) -> VacVector:
    """x . v, computed letter by letter from the right: l- letters are
    pushed through a basis word and projected to the module at each step,
    so no term carrying an unabsorbable l- letter is ever expanded.
    ``cache`` memoizes x . W per basis word W."""
    alg = x.alg
    groups = None
    out: dict = {}
    for W, cw in v.terms.items():
        img = cache.get(W) if cache is not None else None
        if img is None:
            if groups is None:
                groups = _split(alg, x)
            acc: dict = {}
            d = sum(g.r for g in W)
            for M, plus_terms in groups.items():
                if sum(g.r for g in M) > d:
                    continue
                mid = _minus_on_word(alg, M, W)
                if not mid:
                    continue
                for T, P, c in plus_terms:
                    for w2, c2 in mid.items():
                        for w3, c3 in _plus_on_word(alg, P, w2).items():
                            t = c * c2 * c3
                            if any(T):
                                t = t * alg.qdot(tuple(-e for e in T), alg.weight(w3))
                            acc[w3] = acc[w3] + t if w3 in acc else t
            img = VacVector(alg, acc)
            if cache is not None:
                cache[W] = img
        for w, c in img.terms.items():
            t = c * cw
            out[w] = out[w] + t if w in out else t
    return VacVector(alg, out)


def plus_generators(alg: Algebra, max_depth: int):
    """Non-torus, nonzero l+ generators of depth <= max_depth, in order."""
    n = alg.n
    gens = [Gen(1, i, j, r) for r in range(max_depth + 1)
            for i in range(1, n + 1) for j in range(1, n + 1)]
    gens = [g for g in gens if not g.is_zero and not g.is_torus]
    return sorted(gens, key=alg.key)


def spanning_words(alg: Algebra, depth: int, length: int = 2):
    """Ordered l+ words of total depth <= ``depth`` and length <= ``length``.

    The depth-0 piece is spanned by products of l+_ij[0] with i < j and is
    infinite-dimensional, hence the length bound.
    """
    gens = plus_generators(alg, depth)
    out = [()]
    for L in range(1, length + 1):
        for combo in itertools.combinations_with_replacement(gens, L):
            if sum(g.r for g in combo) <= depth:
                out.append(combo)
    return out


def generator_modes(alg: Algebra, r_max: int):
    """All nonzero generators l+_ij[-r], l-_ij[r] with r <= r_max."""
    n = alg.n
    out = []
    for sign in (1, -1):
        for r in range(r_max + 1):
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    g = Gen(sign, i, j, r)
                    if not g.is_zero:
                        out.append(g)
    return out


def _ell(alg, k, drop_d, plain_perm, method="minor41"):
    if plain_perm:
        method = "trace34"
    return ell_series(alg, k, method, drop_d=drop_d, plain_perm=plain_perm)


def _central_algebra(n, field, p, m_hi):
    return Algebra(n, field, trunc=TruncPolicy(p_minus=p, d_plus=m_hi + p - 1,
                                               series_order=p + m_hi + 2))


def centrality_check(n: int, k: int, field, r_max: int = 2, vec_depth: int = 2,
                     vec_length: int = 2, window=(-2, 2), drop_d: bool = False,
                     plain_perm: bool = False, p_minus: int | None = None,
                     builder=None) -> CheckResult:
    """Module-level evidence: [c, g] w = 0 for every z-coefficient c of l_k(z)
    in the window, every generator mode g with r <= r_max and every spanning
    word w of depth <= vec_depth.

    The l- truncation p must exceed vec_depth + r_max so that all needed
    coefficients are exact; the default is the least such p.  ``builder``
    replaces l_k by another graded series (a function of the algebra).
    """
    p = vec_depth + r_max + 1 if p_minus is None else p_minus
    if p <= vec_depth + r_max:
        raise ValueError("p_minus too small for exact module action")
    lo, hi = window
    alg = _central_algebra(n, field, p, hi)
    ell = builder(alg) if builder else _ell(alg, k, drop_d, plain_perm)
    words = spanning_words(alg, vec_depth, vec_length)
    gens = generator_modes(alg, r_max)
    checked = 0
    for m in range(lo, hi + 1):
        c = ell.zpart(m)
        cache: dict = {}
        for g in gens:
            ge = alg.gen(g.sign, g.i, g.j, g.r)
            for w in words:
                v = VacVector.basis(alg, w)
                lhs = act(c, act(ge, v), cache)
                rhs = act(ge, act(c, v, cache))
                checked += 1
                if lhs != rhs:
                    return CheckResult(False, f"z^{m} coefficient, g={g}, w={_wtext(w)}: "
                                       f"residual {(lhs - rhs).to_text()}",
                                       {"p_minus": p, "checked": checked})
    return CheckResult(True, None, {"p_minus": p, "checked": checked,
                                    "scope": "module-level evidence"})


def _wtext(w):
    return "*".join(map(str, w)) + "|0>" if w else "|0>"


def engine_centrality_check(n: int, k: int, field, r_max: int = 2, p_minus: int = 4,
                            window=(-1, 1), drop_d: bool = False, plain_perm: bool = False,
                            builder=None) -> CheckResult:
    """Algebra-level check: [c, g] vanishes modulo the span of PBW monomials
    with l- degree >= p - r (g = l+[-r]) or >= p (g = l-[r]); these are the
    parts of the commutator determined by the truncated coefficient c."""
    p = p_minus
    if p <= r_max:
        raise ValueError("p_minus must exceed r_max")
    lo, hi = window
    alg = _central_algebra(n, field, p, hi + r_max)
    ell = builder(alg) if builder else _ell(alg, k, drop_d, plain_perm)
    gens = generator_modes(alg, r_max)
    for m in range(lo, hi + 1):
        c = ell.zpart(m)
        for g in gens:
            ge = alg.gen(g.sign, g.i, g.j, g.r)
            bound = p - g.r if g.sign > 0 else p
            keep = (lambda w, b=bound: _minus_degree(w) < b)
            res = c.mul(ge, keep=keep) - ge.mul(c, keep=keep)
            if res:
                return CheckResult(False, f"z^{m} coefficient, g={g}: residual {res.to_text()}",
                                   {"p_minus": p})
    return CheckResult(True, None, {"p_minus": p, "scope": "modulo truncation"})


def _bar_vectors(alg, k, plain_perm, drop_d, hi):
    """Coefficients of lbar_k(z)|0> for z^0..z^hi."""
    x = ell_bar_series(alg, k, plain_perm=plain_perm, drop_d=drop_d)
    return {m: to_vacuum(x.zpart(m)) for m in range(0, hi + 1)}


def invariance_check(n: int, k: int, field, depth: int = 2, window_hi: int | None = None,
                     plain_perm: bool = False, drop_d: bool = False) -> CheckResult:
    """l-_ij[r] v = delta_ij delta_r0 v for each coefficient v of lbar_k(z)|0>
    (z^0..z^window_hi) and every generator l-_ij[r], r <= depth."""
    hi = depth if window_hi is None else window_hi
    alg = Algebra(n, field, trunc=TruncPolicy(p_minus=hi + 1, d_plus=hi, series_order=hi + 2))
    vecs = _bar_vectors(alg, k, plain_perm, drop_d, hi)
    for g in generator_modes(alg, depth):
        if g.sign > 0:
            continue
        ge = alg.gen(g.sign, g.i, g.j, g.r)
        for m, v in vecs.items():
            got = act(ge, v)
            want = v if (g.i == g.j and g.r == 0) else VacVector(alg, {})
            if got != want:
                return CheckResult(False, f"g={g} on z^{m} coefficient: residual "
                                   f"{(got - want).to_text()}")
    return CheckResult(True, None, {"window": [0, hi]})


def vacuum_agreement_check(n: int, k: int, field, window_hi: int = 2) -> CheckResult:
    """l_k(z)|0> = lbar_k(z)|0> coefficientwise on z^0..z^window_hi."""
    hi = window_hi
    alg = Algebra(n, field, trunc=TruncPolicy(p_minus=1, d_plus=hi, series_order=hi + 2))
    ell = ell_series(alg, k, "minor41")
    bar = ell_bar_series(alg, k)
    for m in range(0, hi + 1):
        a, b = to_vacuum(ell.zpart(m)), to_vacuum(bar.zpart(m))
        if a != b:
            return CheckResult(False, f"z^{m}: residual {(a - b).to_text()}")
    return CheckResult(True)


def commutativity_check(n: int, k: int, m: int, field, depth: int = 3,
                        plain_perm: bool = False, drop_d: bool = False) -> CheckResult:
    """[a, b]|0> = 0 for all coefficients a of lbar_k and b of lbar_m whose
    product lands in graded pieces of depth <= ``depth``."""
    alg = Algebra(n, field, trunc=TruncPolicy(p_minus=1, d_plus=depth, series_order=depth + 2))
    xa = ell_bar_series(alg, k, plain_perm=plain_perm, drop_d=drop_d)
    xb = xa if k == m else ell_bar_series(alg, m, plain_perm=plain_perm, drop_d=drop_d)
    vac = VacVector.vacuum(alg)
    for da in range(depth + 1):
        a = xa.zpart(da)
        av = act(a, vac)
        for db in range(depth + 1 - da):
            b = xb.zpart(db)
            lhs = act(a, act(b, vac))
            rhs = act(b, av)
            if lhs != rhs:
                return CheckResult(False, f"lbar_{k} z^{da} vs lbar_{m} z^{db}: residual "
                                   f"{(lhs - rhs).to_text()}")
    return CheckResult(True, None, {"depth": depth})
