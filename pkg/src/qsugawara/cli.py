"""Command-line harness: ``verify`` runs named checks and emits JSON reports,
``compute`` prints series in canonical text and JSON."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import fields, replace
from fractions import Fraction

from .checks import CHECKS, RunConfig, run_check, sample_points
from .coeff import SYMBOLIC, NumericQ

__all__ = ["main", "build_parser", "load_config", "compute"]

PASSING = ("pass", "probabilistic-pass")
COMPUTE_TARGETS = ("ell", "ell-bar", "qdet", "hc-image", "miura")


def _window(text: str):
    text = str(text).strip()
    if ":" in text:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    count = int(text)
    if count < 1:
        raise argparse.ArgumentTypeError("window must hold at least one coefficient")
    lo = -((count - 1) // 2)
    return lo, lo + count - 1


def _qlist(text: str):
    return tuple(str(Fraction(x)) for x in str(text).split(",") if x.strip())


_CONVERT = {"n": int, "k": int, "p_minus": int, "series_order": int, "seed": int, "depth": int,
            "window": _window, "q": _qlist, "mode": str, "mutate": str}


def load_config(path: str) -> dict:
    """key = value lines; '#' starts a comment; dashes in keys are allowed."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in _CONVERT:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            out[key] = _CONVERT[key](value)
    return out


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--p-minus", type=int, dest="p_minus")
    p.add_argument("--series-order", type=int, dest="series_order")
    p.add_argument("--window", type=_window, help="LO:HI or a coefficient count")
    p.add_argument("--depth", type=int, help="module depth / l+ depth budget")
    p.add_argument("--mode", choices=("symbolic", "numeric"))
    p.add_argument("--q", type=_qlist, help="comma-separated rational sample points")
    p.add_argument("--seed", type=int)
    p.add_argument("--config", help="key = value file; flags override it")
    p.add_argument("--out", help="write the JSON output here")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qsugawara", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run identity checks")
    v.add_argument("checks", nargs="+",
                   help="check names, 'mutations', or 'all' (every check plus mutations)")
    v.add_argument("--mutate", help="apply a designated structural perturbation")
    v.add_argument("--timings", action="store_true", help="include wall-clock timings")
    v.add_argument("--jobs", type=int, default=1, help="run checks in parallel processes")
    _add_common(v)
    c = sub.add_parser("compute", help="print a series")
    c.add_argument("target", choices=COMPUTE_TARGETS)
    c.add_argument("--method", default="minor41")
    c.add_argument("--sign", choices=("+", "-"), default="+")
    c.add_argument("--variant", choices=("standard", "primed"), default="standard")
    _add_common(c)
    sub.add_parser("list", help="list available checks")
    return ap


def _config(args) -> RunConfig:
    base = load_config(args.config) if getattr(args, "config", None) else {}
    for f in fields(RunConfig):
        val = getattr(args, f.name, None)
        if val is not None and val != ():
            base[f.name] = val
    return RunConfig(**base)


def _run_one(item):
    name, cfg, timings = item
    return run_check(name, cfg, timings)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=str)


def _verify(args) -> int:
    cfg = _config(args)
    names = []
    for name in args.checks:
        if name == "all":
            names.extend(list(CHECKS) + ["mutations"])
        elif name in CHECKS or name == "mutations":
            names.append(name)
        else:
            print(f"unknown check {name!r}; see 'qsugawara list'", file=sys.stderr)
            return 2
    items = [(n, cfg, args.timings) for n in names]
    if args.jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_run_one, items))
    else:
        reports = [_run_one(it) for it in items]
    for rep in reports:
        line = f"{rep['check']}: {rep['status']}"
        if rep.get("warning"):
            line += f" (warning: {rep['warning']})"
        if rep["witness"] and rep["status"] not in PASSING:
            line += f" -- {rep['witness'][:200]}"
        print(line)
    payload = reports[0] if len(reports) == 1 else reports
    text = _dump(payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return 0 if all(r["status"] in PASSING for r in reports) else 1


def compute(target: str, cfg: RunConfig, method: str = "minor41", sign: str = "+",
            variant: str = "standard") -> dict:
    """Series coefficients as {"z^m": canonical text}."""
    from .harish_chandra import PiRing, hc_project, hc_project_plus
    from .lseries import qdet
    from .rll import OPPOSITE, STANDARD, Algebra, TruncPolicy
    from .sugawara import detq_reduced, ell_bar_series, ell_series

    mode = cfg.mode or "symbolic"
    F = SYMBOLIC if mode == "symbolic" else NumericQ(sample_points(cfg)[0])
    n = cfg.n or 2
    k = cfg.k or 1
    lo, hi = cfg.window or ((-1, 1) if target in ("ell", "hc-image") else (0, 2))
    p = cfg.p_minus or 2
    ordering = OPPOSITE if (target == "hc-image" and variant == "primed") else STANDARD
    alg = Algebra(n, F, ordering=ordering,
                  trunc=TruncPolicy(p_minus=p, d_plus=max(hi + p - 1, 1),
                                    series_order=p + max(hi, 0) + 2))
    if target == "miura":
        ring = PiRing(F, None, hi)
        coeffs = {f"delta^{s}": _graded_text(hc_project_plus(x, ring), 0, hi, p)
                  for s, x in sorted(detq_reduced(alg).items())}
    else:
        if target == "ell":
            x = ell_series(alg, k, method)
        elif target == "ell-bar":
            x = ell_bar_series(alg, k)
        elif target == "qdet":
            x = qdet(alg, sign)
        else:
            x = hc_project(ell_series(alg, k, method), PiRing(F, p, max(hi + p - 1, 1)), variant)
        coeffs = _graded_text(x, lo, hi, p)
    params = replace(cfg, mode=mode, window=(lo, hi), p_minus=p, n=n, k=k).resolved()
    return {"target": target, "params": params, "coefficients": coeffs,
            "truncation": f"l- degree < {p}"}


def _graded_text(x, lo, hi, p):
    return {f"z^{m}": x.zpart(m).minus_degree_below(p).to_text() for m in range(lo, hi + 1)}


def _compute(args) -> int:
    cfg = _config(args)
    res = compute(args.target, cfg, args.method, args.sign, args.variant)
    for key, text in res["coefficients"].items():
        if isinstance(text, dict):
            for m, t in text.items():
                print(f"{key} {m}: {t}")
        else:
            print(f"{key}: {text}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(_dump(res) + "\n")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "list":
        for name, (_, mode, trunc_dep, muts) in CHECKS.items():
            extra = f" mutations: {', '.join(muts)}" if muts else ""
            print(f"{name:16s} default {mode}{' (truncated)' if trunc_dep else ''}{extra}")
        print(f"{'mutations':16s} run every designated perturbation; passes if all are caught")
        return 0
    try:
        if args.command == "verify":
            return _verify(args)
        return _compute(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
