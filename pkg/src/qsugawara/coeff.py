"""Exact coefficients: rational functions in q, coefficient fields, and
truncated power series, including the structure series f(x).

Two coefficient fields are used throughout the package:

* ``SymbolicQ`` whose elements are :class:`RatFuncQ`, exact rational
  functions of the indeterminate q;
* ``NumericQ(value)`` whose elements are exact rationals (``flint.fmpq``),
  obtained by specialising q to a fixed non-unit rational.

Every algorithm takes a field object and only uses ring operations plus
``field.qpow``, so the same code runs in both modes.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from flint import fmpq, fmpq_poly

__all__ = [
    "RatFuncQ",
    "SymbolicQ",
    "NumericQ",
    "SYMBOLIC",
    "DEFAULT_SAMPLES",
    "to_fmpq",
    "FPS",
    "f_series",
    "f_series_product",
    "f_functional_check",
    "series_invert",
    "eval_at_q",
]


def to_fmpq(x) -> fmpq:
    """Convert int, Fraction, str ("a/b") or fmpq to ``fmpq``."""
    if isinstance(x, fmpq):
        return x
    if isinstance(x, int):
        return fmpq(x)
    if isinstance(x, Fraction):
        return fmpq(x.numerator, x.denominator)
    if isinstance(x, str):
        f = Fraction(x)
        return fmpq(f.numerator, f.denominator)
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return fmpq(int(x.numerator), int(x.denominator))
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def _poly_str(p: fmpq_poly, var: str = "q") -> str:
    coeffs = p.coeffs()
    if not coeffs:
        return "0"
    parts = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if e == 0:
            body = str(a)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if a == 1 else f"{a}*{mono}"
        parts.append((sign, body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


class RatFuncQ:
    """A reduced fraction ``num/den`` of polynomials in q over the rationals.

    The denominator is monic and coprime to the numerator; zero is ``0/1``.
    Instances are immutable and hashable.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=None, _reduced: bool = False):
        if not isinstance(num, fmpq_poly):
            num = fmpq_poly([to_fmpq(num)])
        if den is None:
            den = fmpq_poly([1])
        elif not isinstance(den, fmpq_poly):
            den = fmpq_poly([to_fmpq(den)])
        if not _reduced:
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            if num == 0:
                den = fmpq_poly([1])
            else:
                if den.degree() > 0:
                    g = num.gcd(den)
                    if g.degree() > 0:
                        num = num // g
                        den = den // g
                lc = den[den.degree()]
                if lc != 1:
                    num = num / lc
                    den = den / lc
        self.num = num
        self.den = den
        self._hash = None

    # construction helpers
    @classmethod
    def q(cls) -> "RatFuncQ":
        return cls(fmpq_poly([0, 1]), None, True)

    @classmethod
    def qpow(cls, k: int) -> "RatFuncQ":
        if k >= 0:
            return cls(fmpq_poly([0] * k + [1]), None, True)
        return cls(fmpq_poly([1]), fmpq_poly([0] * (-k) + [1]), True)

    @classmethod
    def coerce(cls, x) -> "RatFuncQ":
        if isinstance(x, RatFuncQ):
            return x
        return cls(fmpq_poly([to_fmpq(x)]), None, True) if x != 0 else cls()

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, RatFuncQ):
            try:
                other = RatFuncQ.coerce(other)
            except TypeError:
                return NotImplemented
        if not self.num:
            return other
        if not other.num:
            return self
        if self.den == other.den:
            return RatFuncQ(self.num + other.num, self.den)
        return RatFuncQ(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFuncQ(-self.num, self.den, True)

    def __sub__(self, other):
        if not isinstance(other, RatFuncQ):
            try:
                other = RatFuncQ.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RatFuncQ):
            try:
                other = RatFuncQ.coerce(other)
            except TypeError:
                return NotImplemented
        if not self.num or not other.num:
            return RatFuncQ()
        if self.den.degree() == 0 and other.den.degree() == 0:
            return RatFuncQ(self.num * other.num, None, True)
        return RatFuncQ(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFuncQ":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFuncQ(self.den, self.num)

    def __truediv__(self, other):
        if not isinstance(other, RatFuncQ):
            try:
                other = RatFuncQ.coerce(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RatFuncQ.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFuncQ(self.num ** k, self.den ** k, True)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, RatFuncQ):
            return self.num == other.num and self.den == other.den
        try:
            other = RatFuncQ.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            if self.den.degree() == 0 and self.num.degree() <= 0:
                # agree with hash of the equal rational constant
                self._hash = hash(self.num[0])
            else:
                self._hash = hash((tuple(self.num.coeffs()), tuple(self.den.coeffs())))
        return self._hash

    def is_constant(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() == 0

    def __call__(self, value):
        return eval_at_q(self, value)

    def __str__(self):
        if self.den.degree() == 0:
            return _poly_str(self.num)
        n = _poly_str(self.num)
        if len(self.num.coeffs()) > 1 and sum(1 for c in self.num.coeffs() if c != 0) > 1:
            n = f"({n})"
        return f"{n}/({_poly_str(self.den)})"

    def __repr__(self):
        return f"RatFuncQ({self})"


def eval_at_q(elem, value) -> fmpq:
    """Evaluate a rational function of q at an exact rational value."""
    v = to_fmpq(value)
    if not isinstance(elem, RatFuncQ):
        return to_fmpq(elem)
    d = elem.den(v)
    if d == 0:
        raise ZeroDivisionError(f"denominator of {elem} vanishes at q={v}")
    return elem.num(v) / d


class _Field:
    symbolic = False

    def __init__(self):
        self._qpow_cache: dict[int, object] = {}

    def qpow(self, k: int):
        c = self._qpow_cache.get(k)
        if c is None:
            c = self._make_qpow(k)
            self._qpow_cache[k] = c
        return c

    @property
    def q(self):
        return self.qpow(1)


class SymbolicQ(_Field):
    """The field Q(q) with q an indeterminate."""

    symbolic = True
    zero = RatFuncQ()
    one = RatFuncQ(1)
    label = "symbolic"

    def _make_qpow(self, k):
        return RatFuncQ.qpow(k)

    def __call__(self, x):
        return RatFuncQ.coerce(x)

    def specialize(self, x, value):
        return eval_at_q(x, value)

    def __eq__(self, other):
        return isinstance(other, SymbolicQ)

    def __hash__(self):
        return hash("SymbolicQ")

    def __repr__(self):
        return "SymbolicQ()"


class NumericQ(_Field):
    """The rationals with q specialised to a fixed rational ``value``."""

    label = "numeric"
    zero = fmpq(0)
    one = fmpq(1)

    def __init__(self, value):
        super().__init__()
        v = to_fmpq(value)
        if v == 0 or v == 1 or v == -1:
            raise ValueError("q must not be 0 or a root of unity")
        self.value = v

    def _make_qpow(self, k):
        return self.value ** k

    def __call__(self, x):
        if isinstance(x, RatFuncQ):
            return eval_at_q(x, self.value)
        return to_fmpq(x)

    def __eq__(self, other):
        return isinstance(other, NumericQ) and other.value == self.value

    def __hash__(self):
        return hash(("NumericQ", self.value))

    def __repr__(self):
        return f"NumericQ({self.value})"


SYMBOLIC = SymbolicQ()
DEFAULT_SAMPLES = (fmpq(3, 2), fmpq(5, 3), fmpq(7, 4))


class FPS:
    """Truncated power series sum c_k x^k, known for exponents < ``order``.

    Coefficients live in any commutative or noncommutative ring whose
    elements support ``+``, ``*`` and truth testing. Binary operations
    truncate to the smaller of the operand orders.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: dict[int, object] | Iterable, order: int):
        if order < 0:
            raise ValueError("order must be nonnegative")
        if not isinstance(coeffs, dict):
            coeffs = dict(enumerate(coeffs))
        self.coeffs = {e: c for e, c in coeffs.items() if 0 <= e < order and c}
        for e in coeffs:
            if e < 0:
                raise ValueError("negative exponent in FPS")
        self.order = order

    @classmethod
    def constant(cls, c, order):
        return cls({0: c}, order)

    def __getitem__(self, e: int):
        if e >= self.order:
            raise IndexError(f"coefficient x^{e} is beyond the known order {self.order}")
        return self.coeffs.get(e, 0)

    def coefficient(self, e: int, zero=0):
        if e >= self.order:
            raise IndexError(f"coefficient x^{e} is beyond the known order {self.order}")
        return self.coeffs.get(e, zero)

    def __add__(self, other):
        if not isinstance(other, FPS):
            other = FPS.constant(other, self.order)
        N = min(self.order, other.order)
        out = {e: c for e, c in self.coeffs.items() if e < N}
        for e, c in other.coeffs.items():
            if e < N:
                out[e] = out[e] + c if e in out else c
        return FPS(out, N)

    __radd__ = __add__

    def __neg__(self):
        return FPS({e: -c for e, c in self.coeffs.items()}, self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, FPS):
            return FPS({e: c * other for e, c in self.coeffs.items()}, self.order)
        N = min(self.order, other.order)
        out: dict[int, object] = {}
        for e1, c1 in self.coeffs.items():
            if e1 >= N:
                continue
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if e < N:
                    t = c1 * c2
                    out[e] = out[e] + t if e in out else t
        return FPS(out, N)

    def __rmul__(self, other):
        return FPS({e: other * c for e, c in self.coeffs.items()}, self.order)

    def scale_arg(self, c) -> "FPS":
        """Substitute x -> c*x."""
        out = {}
        for e in sorted(self.coeffs):
            out[e] = self.coeffs[e] * (c ** e)
        return FPS(out, self.order)

    def truncate(self, N: int) -> "FPS":
        return FPS(self.coeffs, min(N, self.order))

    def map(self, fn) -> "FPS":
        return FPS({e: fn(c) for e, c in self.coeffs.items()}, self.order)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, FPS):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def agrees(self, other: "FPS") -> bool:
        """Coefficientwise equality up to the smaller order."""
        return not (self - other).coeffs

    def __repr__(self):
        if not self.coeffs:
            return f"O(x^{self.order})"
        terms = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            terms.append(f"({c})" if e == 0 else f"({c})*x^{e}")
        return " + ".join(terms) + f" + O(x^{self.order})"


def series_invert(s: FPS, order: int | None = None, one=None) -> FPS:
    """Multiplicative inverse of ``s`` to ``order`` (default: ``s.order``).

    The constant term must be invertible in its ring; ``one`` supplies the
    ring identity when it cannot be inferred.
    """
    N = s.order if order is None else min(order, s.order)
    c0 = s.coeffs.get(0)
    if not c0:
        raise ZeroDivisionError("constant term of the series is not invertible")
    inv0 = 1 / c0
    g = [inv0]
    for m in range(1, N):
        acc = None
        for e in range(1, m + 1):
            c = s.coeffs.get(e)
            if c:
                t = c * g[m - e]
                acc = t if acc is None else acc + t
        g.append(-(acc * inv0) if acc is not None else 0 * inv0)
    return FPS(dict(enumerate(g)), N)


def _check_rank(n: int, order: int):
    if n < 2:
        raise ValueError("the structure series needs n >= 2")
    if order < 1:
        raise ValueError("series order must be at least 1")


def f_series(n: int, order: int, field=SYMBOLIC, perturb_f1=None) -> FPS:
    """The series f(x) = 1 + sum f_k x^k from its linear recurrence.

    ``perturb_f1`` adds a constant to f_1 (used for mutation tests only);
    the perturbation propagates through the recurrence.
    """
    _check_rank(n, order)
    q2 = field.qpow(2)
    p = field.qpow(2 * n)
    pref = -(field.one - q2) * (field.one - field.qpow(2 * n - 2)) / (field.one - p)
    fs = [field.one]
    for k in range(1, order):
        acc = field.zero
        pk = field.one - p ** k
        for i in range(1, k + 1):
            acc = acc + (field.one - p ** i) / pk * fs[k - i]
        fk = pref * acc
        if k == 1 and perturb_f1 is not None:
            fk = fk + field(perturb_f1)
        fs.append(fk)
    return FPS(dict(enumerate(fs)), order)


def _euler_factor(a, p, order, field, inverse: bool) -> FPS:
    """(a x; p)_inf or its reciprocal, expanded by Euler's identities."""
    out = {}
    pk = field.one  # (p;p)_k
    for k in range(order):
        if k > 0:
            pk = pk * (field.one - p ** k)
        if inverse:
            out[k] = a ** k / pk
        else:
            sgn = -1 if k % 2 else 1
            out[k] = sgn * p ** (k * (k - 1) // 2) * a ** k / pk
    return FPS(out, order)


def f_series_product(n: int, order: int, field=SYMBOLIC) -> FPS:
    """f(x) from its infinite product form, each q-Pochhammer factor
    expanded exactly in x (independent of the recurrence)."""
    _check_rank(n, order)
    p = field.qpow(2 * n)
    one = field.one
    return (_euler_factor(one, p, order, field, False)
            * _euler_factor(p, p, order, field, False)
            * _euler_factor(field.qpow(2), p, order, field, True)
            * _euler_factor(field.qpow(2 * n - 2), p, order, field, True))


def f_functional_check(n: int, order: int, field=SYMBOLIC, f: FPS | None = None) -> bool:
    """Check f(x q^{2n})(1-x)(1-x q^{2n}) = f(x)(1-x q^2)(1-x q^{2n-2})."""
    if f is None:
        f = f_series(n, order, field)
    N = min(order, f.order)
    one = field.one
    p = field.qpow(2 * n)
    lhs = f.scale_arg(p) * FPS({0: one, 1: -one}, N) * FPS({0: one, 1: -p}, N)
    rhs = f * FPS({0: one, 1: -field.qpow(2)}, N) * FPS({0: one, 1: -field.qpow(2 * n - 2)}, N)
    return (lhs.truncate(N) - rhs.truncate(N)).coeffs == {}
