"""A short walk through the package at n = 2.

Run with ``python demos/tour.py``.  Everything printed is exact; numeric
runs use q = 3/2.
"""

from flint import fmpq

from qsugawara import SYMBOLIC, Algebra, Gen, NumericQ, TruncPolicy, ell_bar_series, ell_series
from qsugawara.harish_chandra import PiRing, hc_project, lambda_series, lambda_sum, pi_series
from qsugawara.lseries import qdet
from qsugawara.sugawara import detq_reduced
from qsugawara.tensor import antisymmetrizer, fusion_check
from qsugawara.vacuum import VacVector, act, to_vacuum


def banner(text):
    print()
    print(text)
    print("-" * len(text))


def main():
    F = SYMBOLIC
    NUM = NumericQ(fmpq(3, 2))

    banner("q-antisymmetrizer and fusion")
    A = antisymmetrizer(2, 2)
    print("tr A(2) =", A.trace(), "  idempotent:", (A * A - A).is_zero())
    print("fusion (n, k) = (2, 3):", fusion_check(2, 3)[0])

    banner("transfer-matrix series lbar_1(z), z^0..z^1")
    alg = Algebra(2, F, trunc=TruncPolicy(p_minus=1, d_plus=2))
    lbar = ell_bar_series(alg, 1)
    for m in (0, 1):
        print(f"z^{m}:", lbar.zpart(m).to_text())
    print("on the vacuum, z^0 ->", to_vacuum(lbar.zpart(0)).to_text())

    banner("Sugawara series l_1(z) at q = 3/2, truncated below l- degree 3")
    # p must exceed depth(w) + r for the module computation below to be exact
    p = 3
    alg = Algebra(2, NUM, trunc=TruncPolicy(p_minus=p, d_plus=p, series_order=p + 3))
    ell = ell_series(alg, 1, "minor41")
    print("z^0 has", len(ell.zpart(0).minus_degree_below(p).terms), "normal-ordered terms")
    same = all(not (ell.zpart(m) - ell_series(alg, 1, meth).zpart(m)).minus_degree_below(p)
               for meth in ("trace34", "trace39", "minor42") for m in (-1, 0, 1))
    print("all four constructions agree on z^-1..z^1:", same)

    banner("a central coefficient acting on a module vector")
    c = ell.zpart(0)
    g = alg.gen("-", 2, 1, 1)
    w = VacVector.basis(alg, (Gen(1, 1, 2, 1),))
    print("w =", w.to_text())
    print("[c, l-_21[1]] w =", (act(c, act(g, w)) - act(g, act(c, w))).to_text())

    banner("Harish-Chandra image of l_1(z), z^0")
    p = 2
    alg = Algebra(2, F, trunc=TruncPolicy(p_minus=p, d_plus=p, series_order=p + 3))
    ring = PiRing(F, p, p)
    image = hc_project(ell_series(alg, 1, "minor41"), ring)
    lp = {i: pi_series(ring, 1, i, p + 1) for i in (1, 2)}
    lm = {i: pi_series(ring, -1, i, p, unit_inverse_of=(1, i, 0)) for i in (1, 2)}
    lam = {i: lambda_series(ring, 2, i, lp.__getitem__, lm.__getitem__) for i in (1, 2)}
    formula = lambda_sum(2, 1, lam.__getitem__)
    print("chi(l_1) z^0      :", image.zpart(0).minus_degree_below(p).to_text())
    print("lambda_1 + lambda_2:", formula.zpart(0).minus_degree_below(p).to_text())

    banner("quantum determinant and the det_q expansion")
    alg = Algebra(2, F, trunc=TruncPolicy(p_minus=1, d_plus=1))
    print("qdet L+(z), z^0:", qdet(alg, "+").zpart(0).to_text())
    for s, x in sorted(detq_reduced(alg).items()):
        print(f"delta^{s}, z^0:", x.zpart(0).to_text())


if __name__ == "__main__":
    main()
