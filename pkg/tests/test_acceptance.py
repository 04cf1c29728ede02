"""The fifteen acceptance criteria, one test each.

Every test prints a single ``criterion N: PASS|FAIL`` line (visible with
``pytest -s`` or in the terminal summary) and asserts its time budget.
"""

import time

import pytest

from qsugawara.checks import RunConfig, run_check

PASSING = ("pass", "probabilistic-pass")
_LINES = []

# number -> (title, [(check, config overrides)], seconds allowed)
CRITERIA = {
    1: ("Yang-Baxter for R(u,v)", [("ybe", {}), ("ybe", {"n": 4, "mode": "numeric"})], 60),
    2: ("f-series recurrence, product form, functional equation", [("f-series", {})], 10),
    3: ("crossing symmetry and unitarity", [("crossing", {})], 60),
    4: ("fusion", [("fusion", {})], 60),
    5: ("antisymmetrizer", [("antisym", {})], 30),
    6: ("four constructions of l_k agree", [("ell-methods", {})], 600),
    7: ("centrality (module-level evidence)", [("centrality", {})], 900),
    8: ("invariants and commutativity", [("invariance", {}), ("commutativity", {})], 600),
    9: ("qdet centrality and factorization",
        [("qdet-central", {}), ("factorization", {"n": 2})], 300),
    10: ("inverse-matrix formula", [("lminus-inverse", {"n": 2})], 300),
    11: ("q-Manin property and det_q identity",
         [("manin", {"n": 2}), ("manin", {"n": 3, "mode": "numeric"}),
          ("detq-identity", {"n": 2}), ("detq-identity", {"n": 3, "mode": "numeric"})], 300),
    12: ("Harish-Chandra images", [("hc-image", {}), ("hc-image-primed", {})], 900),
    13: ("Miura transformation", [("miura", {})], 60),
    14: ("Wakimoto eigenvalues", [("wakimoto", {})], 60),
    15: ("mutation sensitivity", [("mutations", {})], 600),
}


def _extra_conditions(num, reports):
    """Criterion-specific requirements beyond a passing status."""
    problems = []
    by_name = {r["check"]: r for r in reports}
    if num in (6, 7, 8, 10, 12):
        for r in reports:
            if r["status"] == "probabilistic-pass" and len(r["details"]) < 2:
                problems.append(f"{r['check']}: fewer than two sample points")
    if num in (6, 7, 9, 10, 12):
        for r in reports:
            if r["stability"] is False:
                problems.append(f"{r['check']}: not stable under p_minus refinement")
    if num == 7:
        rep = by_name["centrality"]
        if "module-level evidence" not in rep.get("scope", ""):
            problems.append("centrality report does not label its scope")
        for point, parts in rep["details"].items():
            for k in (1, 2):
                if not any(f"k={k}" in name and "module" in name for name in parts):
                    problems.append(f"centrality at q={point}: no module check for k={k}")
    if num == 15:
        for sub in by_name["mutations"]["details"]:
            if sub["status"] != "fail" or not sub["witness"]:
                problems.append(f"{sub['check']}/{sub['mutation']} not caught")
    return problems


@pytest.fixture(scope="module", autouse=True)
def _summary(request):
    yield
    tr = request.config.pluginmanager.getplugin("terminalreporter")
    if tr is not None and _LINES:
        tr.write_sep("-", "acceptance criteria")
        for line in _LINES:
            tr.write_line(line)


@pytest.mark.acceptance
@pytest.mark.parametrize("num", sorted(CRITERIA))
def test_criterion(num, capsys):
    title, runs, limit = CRITERIA[num]
    t0 = time.perf_counter()
    reports = [run_check(name, RunConfig(**over)) for name, over in runs]
    elapsed = time.perf_counter() - t0
    failed = [f"{r['check']}: {r['status']} {r['witness'] or ''}".strip()
              for r in reports if r["status"] not in PASSING]
    failed += _extra_conditions(num, reports)
    if elapsed > limit:
        failed.append(f"took {elapsed:.1f}s, limit {limit}s")
    verdict = "PASS" if not failed else "FAIL"
    statuses = ", ".join(f"{r['check']}={r['status']}" for r in reports)
    line = f"criterion {num:2d} [{title}]: {verdict} ({elapsed:.1f}s; {statuses})"
    _LINES.append(line)
    with capsys.disabled():
        print("\n" + line)
    assert not failed, "; ".join(failed)
