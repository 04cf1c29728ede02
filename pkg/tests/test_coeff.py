from fractions import Fraction

import pytest
from flint import fmpq, fmpq_poly
from hypothesis import given, strategies as st

from qsugawara.coeff import (FPS, SYMBOLIC, NumericQ, RatFuncQ, eval_at_q, f_functional_check,
                             f_series, f_series_product, series_invert)

q = SYMBOLIC.q
small = st.integers(min_value=-5, max_value=5)
polys = st.lists(small, min_size=1, max_size=4)


@st.composite
def ratfuncs(draw):
    num = draw(polys)
    den = draw(polys.filter(any))
    return RatFuncQ(fmpq_poly(num), fmpq_poly(den))


def _eval_fraction(num, den, x):
    """Independent evaluation with plain Fractions."""
    n = sum(Fraction(c) * x ** i for i, c in enumerate(num))
    d = sum(Fraction(c) * x ** i for i, c in enumerate(den))
    return n / d


# ---- worked values ----------------------------------------------------

def test_f1_rank_two_closed_form():
    f = f_series(2, 2)
    assert f[1] == -(1 - q ** 2) ** 2 / (1 - q ** 4)


def test_f_order_one_is_constant():
    f = f_series(3, 1)
    assert f.coeffs == {0: SYMBOLIC.one}


def test_f1_at_two():
    assert eval_at_q(f_series(2, 2)[1], 2) == fmpq(3, 5)


def test_eval_simple_ratio():
    assert eval_at_q((q - 1) / (q + 1), 3) == fmpq(1, 2)


def test_eval_at_pole_raises():
    with pytest.raises(ZeroDivisionError):
        eval_at_q(1 / (q - 2), 2)


def test_rank_one_rejected():
    with pytest.raises(ValueError):
        f_series(1, 4)
    with pytest.raises(ValueError):
        f_series(2, 0)


@pytest.mark.parametrize("n", [2, 3])
def test_recurrence_matches_product(n):
    assert f_series(n, 6) == f_series_product(n, 6)


def test_functional_equation():
    assert f_functional_check(2, 10)
    assert f_functional_check(3, 1)


def test_functional_equation_detects_perturbed_f1():
    assert not f_functional_check(2, 10, f=f_series(2, 10, perturb_f1=1))


def test_geometric_inverse():
    one = SYMBOLIC.one
    inv = series_invert(FPS({0: one, 1: -one}, 4))
    assert inv == FPS({e: one for e in range(4)}, 4)
    assert series_invert(FPS({0: one}, 3)) == FPS({0: one}, 3)


def test_invert_f_multiplies_back():
    f = f_series(2, 6)
    assert (f * series_invert(f)) == FPS({0: SYMBOLIC.one}, 6)


def test_invert_requires_unit():
    with pytest.raises(ZeroDivisionError):
        series_invert(FPS({1: SYMBOLIC.one}, 3))


def test_fps_does_not_claim_beyond_order():
    a = FPS({0: 1, 1: 2}, 5)
    b = FPS({0: 1}, 3)
    assert (a * b).order == 3
    with pytest.raises(IndexError):
        (a + b)[3]


def test_numeric_field_matches_evaluation():
    F = NumericQ(fmpq(5, 3))
    f_num = f_series(3, 5, F)
    f_sym = f_series(3, 5)
    assert all(f_num[e] == eval_at_q(f_sym[e], fmpq(5, 3)) for e in range(5))


# ---- properties --------------------------------------------------------

@given(ratfuncs())
def test_field_inverse(a):
    if a:
        assert a * a.inverse() == SYMBOLIC.one
        assert a / a == 1


@given(ratfuncs(), ratfuncs(), ratfuncs())
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == 0


@given(polys, polys.filter(any), st.integers(2, 9), st.integers(2, 9))
def test_eval_against_fractions(num, den, x_num, x_den):
    x = Fraction(x_num, x_den)
    a = RatFuncQ(fmpq_poly(num), fmpq_poly(den))
    try:
        want = _eval_fraction(num, den, x)
    except ZeroDivisionError:
        return
    got = eval_at_q(a, fmpq(x.numerator, x.denominator))
    assert Fraction(int(got.p), int(got.q)) == want


@given(ratfuncs(), ratfuncs(), st.sampled_from([fmpq(3, 2), fmpq(5, 3), fmpq(7, 4)]))
def test_eval_is_ring_homomorphism(a, b, x):
    try:
        ea, eb = eval_at_q(a, x), eval_at_q(b, x)
    except ZeroDivisionError:
        return
    assert eval_at_q(a * b, x) == ea * eb
    assert eval_at_q(a + b, x) == ea + eb


@given(st.lists(small, min_size=1, max_size=6).filter(lambda c: c[0] != 0), st.integers(1, 7))
def test_series_inverse_two_sided(cs, N):
    s = FPS({e: fmpq(c) for e, c in enumerate(cs)}, N)
    g = series_invert(s)
    one = FPS({0: fmpq(1)}, N)
    assert s * g == one
    assert g * s == one
