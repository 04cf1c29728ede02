import itertools
from math import comb

import pytest
from hypothesis import given, strategies as st

from qsugawara.coeff import SYMBOLIC, NumericQ
from qsugawara.polys import MPoly
from qsugawara.tensor import (TensorOp, antisymmetrizer, crossing_residuals, d_matrix,
                              embed_one_leg, embed_two_leg, fusion_check, identity, matrix_unit,
                              partial_trace, partial_transpose, perm_action, plain_permutation,
                              q_permutation, r_bar, r_two_param, reduced_word,
                              unitarity_residual, ybe_residual)

F = SYMBOLIC
q = F.q


def _brute_two_leg(C, a, b, k):
    """C_ab by permuting index positions of C (x) 1 directly."""
    n = C.n
    ent = {}
    for I in itertools.product(range(n), repeat=k):
        for J in itertools.product(range(n), repeat=k):
            if any(I[p] != J[p] for p in range(k) if p not in (a - 1, b - 1)):
                continue
            c = C[((I[a - 1], I[b - 1]), (J[a - 1], J[b - 1]))]
            if c:
                ent[(I, J)] = c
    return TensorOp(n, k, ent)


@st.composite
def sparse_ops(draw, n=2, k=2):
    idx = list(itertools.product(range(n), repeat=k))
    keys = draw(st.lists(st.tuples(st.sampled_from(idx), st.sampled_from(idx)), max_size=8))
    vals = draw(st.lists(st.integers(-4, 4), min_size=len(keys), max_size=len(keys)))
    return TensorOp(n, k, {key: F(v) for key, v in zip(keys, vals)})


def test_q_permutation_on_basis():
    P = q_permutation(2)
    # column (e1 (x) e2) maps to q * (e2 (x) e1)
    col = (0, 1)
    image = {I: c for (I, J), c in P.entries.items() if J == col}
    assert image == {(1, 0): q}


def test_embed_identity_and_qperm():
    assert embed_two_leg(identity(2, 2, F.one), 1, 2, 3) == identity(2, 3, F.one)
    P = q_permutation(2)
    assert embed_two_leg(P, 1, 2, 2) == P
    assert embed_two_leg(P, 2, 1, 2) == _brute_two_leg(P, 2, 1, 2)
    for a, b in [(1, 3), (3, 2), (2, 1)]:
        assert embed_two_leg(P, a, b, 3) == _brute_two_leg(P, a, b, 3)


def test_embed_rejects_bad_legs():
    P = q_permutation(2)
    with pytest.raises(ValueError):
        embed_two_leg(P, 1, 1, 2)
    with pytest.raises(ValueError):
        embed_two_leg(P, 1, 4, 3)


def test_partial_transpose_definition():
    X = TensorOp(4, 2, {((0, 2), (1, 3)): F.one})  # e_12 (x) e_34
    assert partial_transpose(X, 1) == TensorOp(4, 2, {((1, 2), (0, 3)): F.one})


def test_traces():
    assert partial_trace(identity(2, 2, 1), [1, 2]) == 4
    assert partial_trace(antisymmetrizer(2, 2), [1, 2]) == 1


def test_two_param_diagonal_and_coincident_points():
    R = r_two_param(2)
    u = MPoly.var(2, 0, F.one)
    v = MPoly.var(2, 1, F.one)
    assert R[((0, 0), (0, 0))] == u * q.inverse() - v * q
    # R(u, u) = (q^-1 - q) u P
    on_diag = R.map(lambda p: p.substitute([(F.one, 1), (F.one, 1)]))
    P = plain_permutation(2).map(lambda c: MPoly(1, {(1,): c * (q.inverse() - q)}))
    assert on_diag == P


def test_rbar_at_zero():
    Rb = r_bar(2)
    for i in range(2):
        assert Rb[((i, i), (i, i))].to_fps(1)[0] == F.one


def test_d_matrix():
    assert d_matrix(1) == TensorOp(1, 1, {((0,), (0,)): F.one})
    assert d_matrix(2) == TensorOp(2, 1, {((0,), (0,)): q, ((1,), (1,)): q.inverse()})
    for n in range(1, 5):
        D = d_matrix(n)
        prod = F.one
        for i in range(n):
            prod = prod * D[((i,), (i,))]
        assert prod == F.one


def test_identity_permutation_and_braid():
    assert perm_action((1, 2, 3), 2) == identity(2, 3, F.one)
    P = q_permutation(2)
    P12, P23 = embed_two_leg(P, 1, 2, 3), embed_two_leg(P, 2, 3, 3)
    assert P12 * P23 * P12 == P23 * P12 * P23


def test_reduced_word_independence():
    sigma = (3, 1, 2)
    w = reduced_word(sigma)
    assert perm_action(sigma, 2) == perm_action(sigma, 2, word=w)
    with pytest.raises(ValueError):
        reduced_word((1, 1, 2))


@pytest.mark.parametrize("n,k", [(2, 1), (2, 2), (2, 3), (3, 2), (3, 3), (3, 4)])
def test_antisymmetrizer(n, k):
    A = antisymmetrizer(n, k)
    assert A * A == A
    if k == 1:
        assert A == identity(n, 1, F.one)
    if k > n:
        assert A.is_zero()
    else:
        assert A.trace() == comb(n, k)


@pytest.mark.parametrize("n,k", [(2, 2), (2, 3), (3, 2)])
def test_fusion(n, k):
    ok, _ = fusion_check(n, k)
    assert ok


def test_fusion_needs_q_structure():
    ok, _ = fusion_check(2, 2, plain=True)
    assert not ok


def test_ybe_and_mutation():
    assert ybe_residual(2).is_zero()
    assert not ybe_residual(2, mutate=True).is_zero()
    assert ybe_residual(4, NumericQ(3)).is_zero()


def test_crossing_and_unitarity():
    r1, r2 = crossing_residuals(2, 8)
    assert r1.is_zero() and r2.is_zero()
    assert unitarity_residual(2).is_zero()
    r1, r2 = crossing_residuals(2, 6, perturb_f1=1)
    assert not (r1.is_zero() and r2.is_zero())


def test_mismatched_shapes_rejected():
    with pytest.raises(ValueError):
        identity(2, 2, 1) * identity(2, 3, 1)
    with pytest.raises(ValueError):
        TensorOp(2, 2, {((0,), (0, 1)): 1})


@given(sparse_ops(n=2, k=2), st.sampled_from([1, 2]))
def test_partial_transpose_involution(X, a):
    assert partial_transpose(partial_transpose(X, a), a) == X


@given(sparse_ops(), sparse_ops())
def test_trace_cyclicity(X, Y):
    assert (X * Y).trace() == (Y * X).trace()


@given(sparse_ops(n=2, k=1), sparse_ops(n=2, k=1))
def test_embedding_is_multiplicative(X, Y):
    assert embed_one_leg(X * Y, 2, 3) == embed_one_leg(X, 2, 3) * embed_one_leg(Y, 2, 3)


def test_matrix_unit():
    assert matrix_unit(3, 1, 2, 1) == TensorOp(3, 1, {((0,), (1,)): 1})
