import pytest
from flint import fmpq
from hypothesis import given, settings, strategies as st

from qsugawara.coeff import NumericQ
from qsugawara.lseries import qdet
from qsugawara.rll import Algebra, Gen, TruncPolicy
from qsugawara.vacuum import (VacVector, act, centrality_check, commutativity_check,
                              engine_centrality_check, invariance_check, spanning_words,
                              to_vacuum, vacuum_agreement_check)

NUM = NumericQ(fmpq(3, 2))
ALG = Algebra(2, NUM, trunc=TruncPolicy(p_minus=12, d_plus=12))


def test_vacuum_relations():
    vac = VacVector.vacuum(ALG)
    for i in (1, 2):
        for j in (1, 2):
            for r in (1, 2):
                assert not act(ALG.gen("-", i, j, r), vac)
    assert act(ALG.gen("-", 1, 1, 0), vac) == vac
    assert act(ALG.gen("-", 2, 1, 0), vac) == 0
    w = (Gen(1, 1, 2, 1),)
    assert act(ALG.gen("+", 1, 2, 1), vac) == VacVector.basis(ALG, w)
    assert act(ALG.gen("+", 1, 1, 0), vac) == vac


def test_qdet_minus_fixes_vacuum():
    alg = Algebra(2, NUM, trunc=TruncPolicy(p_minus=3, d_plus=3))
    v = to_vacuum(qdet(alg, "-"))
    assert v == VacVector.vacuum(alg)


def test_spanning_words_are_ordered_and_bounded():
    words = spanning_words(ALG, 2, 2)
    assert () in words
    for w in words:
        assert ALG.is_ordered(w)
        assert sum(g.r for g in w) <= 2 and len(w) <= 2
        assert all(g.sign > 0 and not g.is_torus for g in w)


_gens = [g for g in (Gen(s, i, j, r) for s in (1, -1) for r in range(3)
                     for i in (1, 2) for j in (1, 2)) if not g.is_zero]
_words = spanning_words(ALG, 2, 2)


@settings(max_examples=40)
@given(st.sampled_from(_gens), st.sampled_from(_gens), st.sampled_from(_words))
def test_act_is_a_module_action(g, h, w):
    ge, he = ALG.gen(*g), ALG.gen(*h)
    v = VacVector.basis(ALG, w)
    assert act(ge * he, v) == act(ge, act(he, v))


def test_centrality_small():
    res = centrality_check(2, 1, NUM, r_max=1, vec_depth=1, window=(-1, 1))
    assert res.ok and res.info["scope"] == "module-level evidence"


def test_centrality_detects_missing_d():
    res = centrality_check(2, 1, NUM, r_max=1, vec_depth=1, window=(-1, 1), drop_d=True)
    assert not res.ok and res.witness


def test_centrality_requires_exact_window():
    with pytest.raises(ValueError):
        centrality_check(2, 1, NUM, r_max=2, vec_depth=2, p_minus=3)


@pytest.mark.parametrize("k", [1, 2])
def test_engine_centrality(k):
    assert engine_centrality_check(2, k, NUM, r_max=2, p_minus=3).ok


def test_invariance_and_agreement():
    for k in (1, 2):
        assert invariance_check(2, k, NUM, depth=2).ok
        assert vacuum_agreement_check(2, k, NUM, 2).ok
    assert not invariance_check(2, 1, NUM, depth=2, drop_d=True).ok
    assert not invariance_check(2, 2, NUM, depth=2, plain_perm=True).ok


def test_commutativity():
    assert commutativity_check(2, 1, 1, NUM, depth=3).ok
    assert commutativity_check(2, 1, 2, NUM, depth=3).ok
    assert not commutativity_check(2, 1, 2, NUM, depth=3, plain_perm=True).ok
