import itertools

import pytest
from flint import fmpq
from hypothesis import given, settings, strategies as st

from qsugawara.coeff import SYMBOLIC, NumericQ
from qsugawara.lseries import l_matrix, l_minus_inverse, mat_mul, qdet, quantum_minor
from qsugawara.rll import OPPOSITE, STANDARD, Algebra, BudgetExceeded, Gen, TruncPolicy
from qsugawara.tensor import r_two_param

F = SYMBOLIC
q = F.q
NUM = NumericQ(fmpq(3, 2))


def _rll_residual_entries(alg, sign, A, B):
    """Entries (i,k,j,m) where the u^A v^B coefficient of
    R(u,v) L1(u) L2(v) - L2(v) L1(u) R(u,v) does not vanish after normal ordering."""
    n = alg.n
    R = r_two_param(n, alg.field)
    s = 1 if sign == "+" else -1

    def l(i, j, r):
        return alg.gen(s, i, j, r) if r >= 0 else alg.zero()

    bad = []
    for i, k, j, m in itertools.product(range(1, n + 1), repeat=4):
        lhs = rhs = alg.zero()
        for a, b in itertools.product(range(1, n + 1), repeat=2):
            for (e1, e2), c in getattr(R[((i - 1, k - 1), (a - 1, b - 1))], "terms", {}).items():
                lhs = lhs + (l(a, j, s * (A - e1)) * l(b, m, s * (B - e2))).scale(c)
            for (e1, e2), c in getattr(R[((a - 1, b - 1), (j - 1, m - 1))], "terms", {}).items():
                rhs = rhs + (l(k, b, s * (B - e2)) * l(i, a, s * (A - e1))).scale(c)
        if lhs != rhs:
            bad.append((i, k, j, m))
    return bad


def test_ordering_examples():
    alg = Algebra(2, F)
    # l+_21 precedes l+_11 (compared at mode 1, since l+_21[0] = 0)
    assert alg.compare(Gen(1, 2, 1, 1), Gen(1, 1, 1, 1)) == -1
    assert alg.compare(Gen(1, 2, 2, 3), Gen(-1, 1, 2, 1)) == -1
    assert alg.compare(Gen(-1, 1, 2, 3), Gen(-1, 1, 2, 5)) == -1
    with pytest.raises(ValueError):
        alg.key(Gen(1, 2, 1, 0))
    with pytest.raises(ValueError):
        alg.key(Gen(-1, 1, 2, 0))


def test_zero_generators_vanish():
    alg = Algebra(3, F)
    assert not alg.gen("+", 2, 1, 0)
    assert not alg.gen("-", 1, 3, 0)


def test_torus_reorderings():
    alg = Algebra(2, F)
    t_plus = alg.gen("+", 1, 1, 0)
    t_minus = alg.gen("-", 1, 1, 0)
    x = alg.gen("+", 1, 2, 1)
    # l+_11[0] l+_12[-1] = q^-1 l+_12[-1] l+_11[0]
    assert t_plus * x == (x * t_plus).scale(q ** -1)
    # l-_11[0] l+_12[-1] = q l+_12[-1] l-_11[0]
    assert t_minus * x == (x * t_minus).scale(q)
    assert t_minus * t_plus == alg.one()
    assert alg.gen("-", 2, 2, 0) * t_plus == t_plus * alg.gen("-", 2, 2, 0)


def test_same_class_commutes():
    alg = Algebra(2, F)
    a, b = alg.gen("+", 1, 2, 1), alg.gen("+", 1, 2, 3)
    assert a * b == b * a
    c, d = alg.gen("-", 2, 1, 0), alg.gen("-", 2, 1, 2)
    assert c * d == d * c


def test_ordered_word_is_fixed():
    alg = Algebra(2, F)
    x = alg.gen("+", 2, 1, 1) * alg.gen("+", 1, 1, 1) * alg.gen("-", 1, 1, 1)
    assert len(x.terms) == 1
    (_, w), c = next(iter(x.terms.items()))
    assert c == F.one and alg.is_ordered(w)


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("sign,modes", [("+", [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1)]),
                                        ("-", [(0, 0), (-1, 0), (0, -1), (-1, -1), (-2, -1)])])
def test_like_sign_relation_holds(n, sign, modes):
    alg = Algebra(n, NUM, trunc=TruncPolicy(p_minus=10, d_plus=10))
    for A, B in modes:
        assert _rll_residual_entries(alg, sign, A, B) == []


@pytest.mark.parametrize("ordering", [STANDARD, OPPOSITE])
def test_mixed_relation_consistency(ordering):
    alg = Algebra(2, NUM, ordering=ordering, trunc=TruncPolicy(p_minus=4, d_plus=6))
    assert alg.mixed_consistency(2, 2) == []


def test_rules_conserve_weight_and_degree():
    alg = Algebra(2, F, trunc=TruncPolicy(p_minus=6, d_plus=6))
    gens = [Gen(s, i, j, r) for s in (1, -1) for r in range(3) for i in (1, 2) for j in (1, 2)]
    gens = [g for g in gens if not g.is_zero and not g.is_torus]
    for x, y in itertools.product(gens, repeat=2):
        if alg.key(x) <= alg.key(y):
            continue
        out = alg.reorder_pair(x, y)
        for (_, w) in out.terms:
            assert alg.weight(w) == alg.weight((x, y))
            assert sum(g.zdeg for g in w) == x.zdeg + y.zdeg


def test_reorder_rejects_ordered_pair():
    alg = Algebra(2, F)
    with pytest.raises(ValueError):
        alg.reorder_pair(Gen(1, 2, 1, 1), Gen(1, 1, 1, 1))


def test_l_matrix_shape():
    alg = Algebra(2, F, trunc=TruncPolicy(p_minus=2, d_plus=2))
    Lm, Lp = l_matrix(alg, "-"), l_matrix(alg, "+")
    assert not Lm[0][1].zpart(0)
    assert not Lp[1][0].zpart(0)
    assert Lp[0][0].zpart(0) == alg.gen("+", 1, 1, 0)
    one = Algebra(1, F, trunc=TruncPolicy(p_minus=2, d_plus=2))
    assert l_matrix(one, "-")[0][0] == one.gen("-", 1, 1, 0) + one.gen("-", 1, 1, 1)


def test_rank_one_inverse():
    alg = Algebra(1, F, trunc=TruncPolicy(p_minus=2, d_plus=2))
    t = alg.gen("+", 1, 1, 0)
    want = t - t * alg.gen("-", 1, 1, 1) * t
    assert l_minus_inverse(alg)[0][0] == want


@pytest.mark.parametrize("n", [2, 3])
def test_inverse_is_two_sided(n):
    alg = Algebra(n, NUM, trunc=TruncPolicy(p_minus=3, d_plus=3))
    L, M = l_matrix(alg, "-"), l_minus_inverse(alg)
    for P in (mat_mul(L, M), mat_mul(M, L)):
        for i in range(n):
            for j in range(n):
                assert P[i][j] == (alg.one() if i == j else alg.zero())
    assert not M[0][1].zpart(0)


def test_qdet_rank_two_expansion():
    alg = Algebra(2, F, trunc=TruncPolicy(p_minus=2, d_plus=2))
    for sign in "+-":
        L = l_matrix(alg, sign)
        want = L[0][0] * L[1][1].shift(-2) - (L[1][0] * L[0][1].shift(-2)).scale(q ** -1)
        assert qdet(alg, sign) == want


def test_minor_antisymmetry_and_repeats():
    alg = Algebra(2, F, trunc=TruncPolicy(p_minus=2, d_plus=2))
    m12 = quantum_minor(alg, "+", (1, 2), (1, 2))
    assert quantum_minor(alg, "+", (2, 1), (1, 2)) == m12.scale(-q)
    assert not quantum_minor(alg, "+", (1, 1), (1, 2))
    assert not quantum_minor(alg, "+", (1, 2), (2, 2))


def test_rank_one_qdet():
    alg = Algebra(1, F, trunc=TruncPolicy(p_minus=2, d_plus=2))
    assert qdet(alg, "+") == l_matrix(alg, "+")[0][0]


def test_truncation_drops_are_counted():
    alg = Algebra(2, NUM, trunc=TruncPolicy(p_minus=1, d_plus=1))
    alg.gen("-", 1, 1, 1) * alg.gen("+", 1, 2, 1)
    assert alg.drops > 0


def test_budget_exceeded():
    alg = Algebra(2, NUM, trunc=TruncPolicy(p_minus=20, d_plus=20), max_word=3)
    g = alg.gen("-", 1, 1, 1)
    h = alg.gen("+", 1, 2, 1)
    with pytest.raises(BudgetExceeded):
        for _ in range(4):
            g = g * h * alg.gen("-", 2, 1, 1)


def test_opposite_ordering_reverses_plus_block():
    std = Algebra(2, F, ordering=STANDARD)
    opp = Algebra(2, F, ordering=OPPOSITE)
    a, b = Gen(1, 2, 1, 1), Gen(1, 1, 2, 1)
    assert std.compare(a, b) == -opp.compare(a, b)
    assert opp.compare(Gen(1, 1, 2, 1), Gen(-1, 2, 1, 1)) == -1


def test_mixed_n_rejected():
    a = Algebra(2, F).gen("+", 1, 1, 1)
    b = Algebra(3, F).gen("+", 1, 1, 1)
    with pytest.raises(ValueError):
        a * b


_gens2 = [g for g in (Gen(s, i, j, r) for s in (1, -1) for r in range(3)
                      for i in (1, 2) for j in (1, 2)) if not g.is_zero]


@settings(max_examples=25)
@given(st.lists(st.sampled_from(_gens2), min_size=3, max_size=5), st.data())
def test_associativity(word, data):
    alg = _ASSOC_ALG
    elems = [alg.gen(*g) for g in word]
    cut = data.draw(st.integers(1, len(elems) - 1))
    left = right = None
    for e in elems:
        left = e if left is None else left * e
    for e in reversed(elems):
        right = e if right is None else e * right
    a = b = None
    for e in elems[:cut]:
        a = e if a is None else a * e
    for e in elems[cut:]:
        b = e if b is None else b * e
    assert left == right == a * b


_ASSOC_ALG = Algebra(2, NUM, trunc=TruncPolicy(p_minus=40, d_plus=40))
