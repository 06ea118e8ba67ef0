"""Command-line front end.

Subcommands::

    sinecert verify    --family gamma --n 30 --mode exact
    sinecert verify    --coeffs 2,1,4/3,1,6/5,0,0,3/4
    sinecert check     --cond v,kv2 --family delta --n 40
    sinecert check     --cond dominates --a ones --b gamma --n 40
    sinecert reproduce [--criteria 3,4]
    sinecert scan      --param gamma_exp --range 0.20:0.30 --n 60 [--csv FILE]
    sinecert scan      --param gamma_exp --point 0.23 --n 60

Family identifiers: vietoris_c, theoremC_max, gamma, delta, ones, fejer,
phi1_max:A, power_phi:G, shifted_sqrt_phi:B, custom:a1,a2,..., odd_comb:FAMILY.
Rationals are written ``p/q``; decimal literals are rejected in exact mode.

Every command prints one JSON report (or writes it to ``--out``) with a
``constants`` table, a ``certificates`` array, command-specific ``results``
and an ``environment`` block.  Exit status: 0 all pass, 1 a mathematical
violation or failed row, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import platform
import sys
import time
from fractions import Fraction

import numpy
import scipy

from . import __version__
from . import reproduce as R
from .certify import NUMERIC_TOL, certify_ps, scan_point, scan_threshold
from .coeffseq import (
    CONDITION_IDS,
    belov_partials,
    check_condition,
    custom,
    dominates,
    endpoint_sums,
    parse_family,
    parse_number,
    parse_rational,
)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2

EXTRA_CONDITIONS = ("BELOV", "ENDPOINTS", "DOMINATES")


class UsageError(Exception):
    pass


def _family(text: str):
    try:
        return parse_family(text)
    except (KeyError, ValueError) as exc:
        raise UsageError(exc.args[0] if exc.args else str(exc)) from None


def _coeffs(text: str, exact: bool):
    parse = parse_rational if exact else parse_number
    try:
        return custom([parse(t.strip()) for t in text.split(",") if t.strip()])
    except ValueError as exc:
        raise UsageError(f"bad coefficient list: {exc}") from None


def _sequence(args, exact: bool):
    if args.coeffs and args.family:
        raise UsageError("give either --family or --coeffs, not both")
    if args.coeffs:
        return _coeffs(args.coeffs, exact)
    if args.family:
        return _family(args.family)
    raise UsageError("one of --family or --coeffs is required")


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float):
        return float(f"{v:.12g}")
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


# --- commands ------------------------------------------------------------------

def cmd_verify(args) -> tuple[dict, int]:
    exact = args.mode == "exact"
    seq = _sequence(args, exact)
    if exact and not seq.exact:
        raise UsageError(f"family {seq.name} has irrational coefficients; use --mode numeric")
    n = args.n if args.n is not None else (len(seq.values) if seq.family == "custom" else None)
    if n is None:
        raise UsageError("--n is required for infinite families")
    if n < 1:
        raise UsageError("--n must be >= 1")
    rep = certify_ps(seq, n, tol=args.tol, threads=args.threads, exact=exact)
    d = rep.to_dict()
    certs = d.pop("certificates")
    return {"results": d, "certificates": certs}, EXIT_OK if rep.all_pass else EXIT_VIOLATION


def cmd_check(args) -> tuple[dict, int]:
    conds = [c.strip().upper() for c in args.cond.split(",") if c.strip()]
    if not conds:
        raise UsageError("--cond is empty")
    for c in conds:
        if c not in CONDITION_IDS and c not in EXTRA_CONDITIONS:
            raise UsageError(f"unknown condition {c!r}; choose from {', '.join(CONDITION_IDS + list(EXTRA_CONDITIONS))}")
    if args.n is None or args.n < 1:
        raise UsageError("--n >= 1 is required")
    results = []
    ok = True
    for c in conds:
        if c == "DOMINATES":
            if not (args.a and args.b):
                raise UsageError("dominates needs --a and --b")
            holds = dominates(_family(args.a), _family(args.b), args.n)
            results.append({"condition": "dominates", "a": args.a, "b": args.b, "holds": holds})
        else:
            seq = _sequence(args, exact=False)
            if c == "BELOV":
                parts = belov_partials(seq, args.n)
                bad = [i for i, v in enumerate(parts, start=1) if v < 0]
                holds = not bad
                results.append({
                    "condition": "belov",
                    "holds": holds,
                    "first_failure": bad[0] if bad else None,
                    "zeros": [i for i, v in enumerate(parts, start=1) if v == 0],
                    "partials": _jsonable(parts),
                })
            elif c == "ENDPOINTS":
                at_pi, at_zero = endpoint_sums(seq, args.n)
                holds = at_pi >= 0 and at_zero >= 0
                results.append({"condition": "endpoints", "holds": holds, "at_pi": _jsonable(at_pi), "at_zero": _jsonable(at_zero)})
            else:
                r = check_condition(c, seq, args.n)
                holds = r.holds
                results.append({
                    "condition": c,
                    "holds": holds,
                    "first_failure": r.first_failure,
                    "equalities": list(r.equalities),
                    "checked": len(r.checked),
                })
        ok = ok and holds
    return {"results": results}, EXIT_OK if ok else EXIT_VIOLATION


def cmd_reproduce(args) -> tuple[dict, int]:
    crit = None
    if args.criteria:
        try:
            crit = sorted({int(c) for c in args.criteria.split(",")})
        except ValueError:
            raise UsageError("--criteria takes a comma-separated list of integers") from None
        unknown = [c for c in crit if c not in R.SECTIONS]
        if unknown:
            raise UsageError(f"unknown criteria {unknown}")
    rep = R.run(crit, threads=args.threads)
    rows = [r.to_dict() for r in rep.rows]
    summary = {str(c): rep.criterion_passed(c) for c in (crit or sorted(R.SECTIONS))}
    return (
        {"results": {"all_pass": rep.passed, "criteria": summary, "rows": rows},
         "timings": {str(k): round(v, 3) for k, v in rep.timings.items()}},
        EXIT_OK if rep.passed else EXIT_VIOLATION,
    )


def _parse_range(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(t) for t in text.split(":"))
    except ValueError:
        raise UsageError("--range must look like LO:HI") from None
    if not lo < hi:
        raise UsageError("--range needs LO < HI")
    return lo, hi


def cmd_scan(args) -> tuple[dict, int]:
    if (args.range is None) == (args.point is None):
        raise UsageError("give exactly one of --range or --point")
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    if args.point is not None:
        pts = [scan_point(args.param, args.point, args.n, args.tol)]
        res = {
            "param": args.param,
            "value": args.point,
            "passes": pts[0].passes,
            "failing": list(pts[0].failing),
            "min_value": _jsonable(pts[0].min_value),
        }
    else:
        lo, hi = _parse_range(args.range)
        sr = scan_threshold(args.param, lo, hi, args.n, args.tol, width=args.width)
        pts = sorted(sr.history, key=lambda p: p.param)
        res = {
            "param": args.param,
            "range": [lo, hi],
            "boundary": _jsonable(sr.boundary),
            "passing_side": sr.passing_side,
            "bracket": _jsonable(list(sr.bracket)) if sr.bracket else None,
            "points": [
                {"value": _jsonable(p.param), "first_failing": p.first_failing, "failing": list(p.failing),
                 "min_value": _jsonable(p.min_value)}
                for p in pts
            ],
        }
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["parameter", "first_failing_n", "min_value"])
            for p in pts:
                w.writerow([repr(p.param), p.first_failing if p.first_failing is not None else "", f"{p.min_value:.12g}"])
    # a scan reports data, it does not assert anything
    return {"results": res}, EXIT_OK


# --- plumbing -------------------------------------------------------------------

def _environment(wall: float) -> dict:
    return {
        "sinecert": __version__,
        "python": platform.python_version(),
        "numpy": numpy.__version__,
        "scipy": scipy.__version__,
        "wall_time_s": round(wall, 3),
    }


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    common.add_argument("--threads", type=int, default=None, help="worker processes for per-n jobs")
    common.add_argument("--no-constants", action="store_true", help="omit the constants table")

    p = argparse.ArgumentParser(prog="sinecert", description="Certify nonnegativity of sine polynomials.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="certify every partial sum up to n")
    v.add_argument("--family")
    v.add_argument("--coeffs", help="comma-separated coefficients a_1,a_2,... (p/q rationals)")
    v.add_argument("--n", type=int)
    v.add_argument("--mode", choices=("exact", "numeric"), default="exact")
    v.add_argument("--tol", type=float, default=NUMERIC_TOL)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("check", parents=[common], help="coefficient conditions, Belov sums, dominance")
    c.add_argument("--cond", required=True, help="comma list, e.g. v,kv2 or belov or dominates")
    c.add_argument("--family")
    c.add_argument("--coeffs")
    c.add_argument("--a", help="dominating family for 'dominates'")
    c.add_argument("--b", help="dominated family for 'dominates'")
    c.add_argument("--n", type=int)
    c.set_defaults(func=cmd_check)

    r = sub.add_parser("reproduce", parents=[common], help="recompute every reference constant and claim")
    r.add_argument("--criteria", help="comma-separated subset of criterion numbers")
    r.set_defaults(func=cmd_reproduce)

    s = sub.add_parser("scan", parents=[common], help="numeric PS scan over a family parameter")
    s.add_argument("--param", choices=("gamma_exp", "beta"), required=True)
    s.add_argument("--range")
    s.add_argument("--point", type=float)
    s.add_argument("--n", type=int, default=60)
    s.add_argument("--tol", type=float, default=NUMERIC_TOL)
    s.add_argument("--width", type=float, default=1e-3, help="bisection stopping width")
    s.add_argument("--csv", help="write (parameter, first failing n, min value) rows here")
    s.set_defaults(func=cmd_scan)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is not None and args.threads < 1:
        parser.error("--threads must be >= 1")
    t0 = time.perf_counter()
    try:
        body, code = args.func(args)
    except UsageError as exc:
        print(f"sinecert {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    params = {k: v for k, v in vars(args).items() if k not in ("func", "out", "threads", "no_constants")}
    report = {
        "command": args.command,
        "parameters": params,
        "constants": [] if args.no_constants else R.constants_table(),
        "certificates": body.pop("certificates", []),
        **body,
        "environment": _environment(time.perf_counter() - t0),
    }
    text = json.dumps(report, indent=2, sort_keys=False)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
