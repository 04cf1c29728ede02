import json

import pytest

from qsugawara.checks import CHECKS, MUTATIONS, RunConfig, run_check, sample_points
from qsugawara.cli import load_config, main

SCHEMA = {"check", "params", "status", "witness", "timings", "drops", "stability", "details"}


def _run(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr().out


def test_list(capsys):
    code, out = _run(["list"], capsys)
    assert code == 0
    for name in CHECKS:
        assert name in out


def test_verify_pass_and_report(tmp_path, capsys):
    out_file = tmp_path / "r.json"
    code, out = _run(["verify", "ybe", "--n", "2", "--out", str(out_file)], capsys)
    assert code == 0
    assert out.strip() == "ybe: pass"
    rep = json.loads(out_file.read_text())
    assert SCHEMA <= set(rep)
    assert rep["status"] == "pass" and rep["witness"] is None and rep["timings"] is None
    assert rep["params"]["n"] == 2 and rep["params"]["mode"] == "symbolic"


def test_numeric_pass_is_probabilistic(capsys):
    code, out = _run(["verify", "antisym", "--n", "2", "--k", "2", "--mode", "numeric"], capsys)
    assert code == 0
    assert "probabilistic-pass" in out


def test_single_sample_point_warns():
    rep = run_check("antisym", RunConfig(n=2, k=2, mode="numeric", q=("3/2",)))
    assert rep["status"] == "probabilistic-pass" and "warning" in rep


def test_mutation_fails_with_witness(tmp_path, capsys):
    out_file = tmp_path / "m.json"
    code, out = _run(["verify", "fusion", "--n", "2", "--k", "2", "--mutate", "plain-perm",
                      "--out", str(out_file)], capsys)
    assert code == 1
    rep = json.loads(out_file.read_text())
    assert rep["status"] == "fail" and rep["witness"]


def test_unknown_mutation_is_an_error(capsys):
    code = main(["verify", "ybe", "--mutate", "drop-d"])
    assert code == 2


def test_unknown_check(capsys):
    assert main(["verify", "nonsense"]) == 2


def test_reports_are_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for f in (a, b):
        main(["verify", "pbw-confluence", "--n", "2", "--seed", "3", "--out", str(f)])
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()


def test_timings_opt_in(tmp_path, capsys):
    f = tmp_path / "t.json"
    main(["verify", "antisym", "--n", "2", "--timings", "--out", str(f)])
    capsys.readouterr()
    assert json.loads(f.read_text())["timings"]["seconds"] >= 0


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sample run\nn = 3\nk = 2\nmode = numeric\nq = 5/3,7/4\nwindow = 0:1\n")
    loaded = load_config(str(cfg))
    assert loaded["n"] == 3 and loaded["window"] == (0, 1) and loaded["q"] == ("5/3", "7/4")
    f = tmp_path / "r.json"
    code = main(["verify", "fusion", "--config", str(cfg), "--n", "2", "--out", str(f)])
    capsys.readouterr()
    rep = json.loads(f.read_text())
    assert code == 0
    assert rep["params"]["n"] == 2 and rep["params"]["k"] == 2
    assert rep["params"]["q"] == ["5/3", "7/4"]


def test_bad_config(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    with pytest.raises(ValueError):
        load_config(str(cfg))
    assert main(["verify", "ybe", "--config", str(cfg)]) == 2


def test_seeded_samples_are_reproducible():
    a = sample_points(RunConfig(seed=11))
    assert a == sample_points(RunConfig(seed=11))
    assert len(a) == 2 and all(x not in (0, 1, -1) for x in a)
    assert sample_points(RunConfig()) == sample_points(RunConfig(q=("3/2", "5/3")))


def test_multiple_checks_and_jobs(capsys):
    code, out = _run(["verify", "ybe", "antisym", "--n", "2", "--jobs", "2"], capsys)
    assert code == 0
    assert out.splitlines() == ["ybe: pass", "antisym: pass"]


def test_compute_ell_bar(capsys, tmp_path):
    f = tmp_path / "c.json"
    code, out = _run(["compute", "ell-bar", "--n", "2", "--k", "1", "--window", "0:1",
                      "--out", str(f)], capsys)
    assert code == 0
    assert out.splitlines()[0] == "z^0: (1/(q))*l+_22[0] + (q)*l+_11[0]"
    data = json.loads(f.read_text())
    assert data["target"] == "ell-bar" and set(data["coefficients"]) == {"z^0", "z^1"}


def test_compute_qdet_rank_one(capsys):
    code, out = _run(["compute", "qdet", "--n", "1", "--window", "0:1"], capsys)
    assert code == 0
    assert out.splitlines() == ["z^0: (1)*l+_11[0]", "z^1: (1)*l+_11[-1]"]


def test_window_count_form(capsys):
    code, out = _run(["compute", "ell", "--n", "2", "--mode", "numeric", "--window", "3",
                      "--p-minus", "1"], capsys)
    assert code == 0
    assert [ln.split(":")[0] for ln in out.splitlines()] == ["z^-1", "z^0", "z^1"]


def test_every_mutation_is_registered():
    for check, mutation, _ in MUTATIONS:
        assert mutation in CHECKS[check][3]
