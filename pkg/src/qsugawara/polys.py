"""Polynomial rings over a coefficient field: sparse multivariate
polynomials (entries of R(u,v)) and univariate rational functions in x
(entries of the normalised R-matrix)."""

from __future__ import annotations

from .coeff import SYMBOLIC

__all__ = ["MPoly", "UPoly", "RatFuncX"]


class MPoly:
    """Sparse polynomial in ``nvars`` commuting variables over a field."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def var(cls, nvars: int, idx: int, coeff=1) -> "MPoly":
        e = [0] * nvars
        e[idx] = 1
        return cls(nvars, {tuple(e): coeff})

    @classmethod
    def const(cls, nvars: int, c) -> "MPoly":
        return cls(nvars, {(0,) * nvars: c})

    def _lift(self, other):
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return MPoly.const(self.nvars, other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return MPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            return MPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        other = self._lift(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t = c1 * c2
                out[e] = out[e] + t if e in out else t
        return MPoly(self.nvars, out)

    def __rmul__(self, other):
        return MPoly(self.nvars, {e: other * c for e, c in self.terms.items()})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        return self == self._lift(other)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def substitute(self, images: list[tuple[object, int]], nvars_out: int = 1, var_out: int = 0) -> "MPoly":
        """Map variable i to ``c_i * t^{d_i}`` where ``images[i] = (c_i, d_i)``
        and t is variable ``var_out`` of the output ring."""
        out: dict = {}
        for e, c in self.terms.items():
            coef = c
            deg = 0
            for (ci, di), ei in zip(images, e):
                if ei:
                    coef = coef * ci ** ei
                    deg += di * ei
            key = [0] * nvars_out
            key[var_out] = deg
            key = tuple(key)
            out[key] = out[key] + coef if key in out else coef
        return MPoly(nvars_out, out)

    def __repr__(self):
        if not self.terms:
            return "0"
        names = "uvwxyz"
        parts = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(
                (names[i] if names[i:i + 1] else f"x{i}") + (f"^{p}" if p > 1 else "")
                for i, p in enumerate(e) if p
            )
            parts.append(f"({self.terms[e]})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


class UPoly:
    """Dense univariate polynomial over a field, coefficients low to high."""

    __slots__ = ("c", "field")

    def __init__(self, coeffs, field=SYMBOLIC):
        c = list(coeffs)
        while c and not c[-1]:
            c.pop()
        self.c = tuple(c)
        self.field = field

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def lc(self):
        return self.c[-1]

    def __add__(self, other):
        a, b = self.c, other.c
        m = max(len(a), len(b))
        z = self.field.zero
        return UPoly([(a[i] if i < len(a) else z) + (b[i] if i < len(b) else z) for i in range(m)], self.field)

    def __neg__(self):
        return UPoly([-x for x in self.c], self.field)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            return UPoly([x * other for x in self.c], self.field)
        if not self.c or not other.c:
            return UPoly([], self.field)
        out = [self.field.zero] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if not a:
                continue
            for j, b in enumerate(other.c):
                if b:
                    out[i + j] = out[i + j] + a * b
        return UPoly(out, self.field)

    def divmod(self, other):
        if not other.c:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        dq = len(r) - len(other.c)
        if dq < 0:
            return UPoly([], self.field), self
        quo = [self.field.zero] * (dq + 1)
        inv = 1 / other.lc()
        for s in range(dq, -1, -1):
            t = r[s + len(other.c) - 1] * inv
            if not t:
                continue
            quo[s] = t
            for i, b in enumerate(other.c):
                r[s + i] = r[s + i] - t * b
        return UPoly(quo, self.field), UPoly(r, self.field)

    def monic(self):
        inv = 1 / self.lc()
        return UPoly([x * inv for x in self.c], self.field)

    def gcd(self, other):
        a, b = self, other
        while b.c:
            a, b = b, a.divmod(b)[1]
        return a.monic() if a.c else a

    def __call__(self, x):
        acc = self.field.zero
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def reversed_to(self, d: int) -> "UPoly":
        """x^d * p(1/x) for d >= degree."""
        c = list(self.c) + [self.field.zero] * (d + 1 - len(self.c))
        return UPoly(reversed(c), self.field)

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        return isinstance(other, UPoly) and self.c == other.c

    def __hash__(self):
        return hash(self.c)


class RatFuncX:
    """Reduced rational function p(x)/r(x) over a field, r monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: UPoly, den: UPoly | None = None):
        field = num.field
        if den is None:
            den = UPoly([field.one], field)
        if not den.c:
            raise ZeroDivisionError("zero denominator")
        if not num.c:
            den = UPoly([field.one], field)
        else:
            g = num.gcd(den)
            if g.degree > 0:
                num = num.divmod(g)[0]
                den = den.divmod(g)[0]
            inv = 1 / den.lc()
            num = num * inv
            den = den * inv
        self.num = num
        self.den = den

    @classmethod
    def from_coeffs(cls, num, den=None, field=SYMBOLIC) -> "RatFuncX":
        return cls(UPoly(num, field), UPoly(den, field) if den is not None else None)

    @property
    def field(self):
        return self.num.field

    def _lift(self, other):
        if isinstance(other, RatFuncX):
            return other
        return RatFuncX(UPoly([other], self.field))

    def __add__(self, other):
        other = self._lift(other)
        return RatFuncX(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFuncX(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        other = self._lift(other)
        return RatFuncX(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        return RatFuncX(self.den, self.num)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def invert_arg(self) -> "RatFuncX":
        """Substitute x -> 1/x."""
        d = max(self.num.degree, self.den.degree, 0)
        return RatFuncX(self.num.reversed_to(d), self.den.reversed_to(d))

    def to_fps(self, order: int):
        from .coeff import FPS, series_invert
        den = FPS(dict(enumerate(self.den.c)), order)
        return FPS(dict(enumerate(self.num.c)), order) * series_invert(den)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        other = self._lift(other)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        def ps(p):
            return " + ".join(f"({c})*x^{i}" for i, c in enumerate(p.c) if c) or "0"
        return f"[{ps(self.num)}]/[{ps(self.den)}]"
