"""Command-line front end.

Examples::

    ioc-bounds eval --c -1 --n 1 --x 0.25
    ioc-bounds verify --workers 4 --out report.json
    ioc-bounds verify --suites identities --max-n 120
    ioc-bounds sweep --c -1 --n 3 --x-points 101 --out curves.csv
    ioc-bounds identities --max-n 200

Exit status: 0 when every check passes, 1 on a verification failure, 2 on a
usage, parameter or domain error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path
from typing import Sequence

from .bounds import bound_report
from .errors import IocError
from .family import FamilyParams, entropies, ioc_triple
from .harness import ALL_SUITES, SweepConfig, sweep, verify, with_overrides

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _suite_list(text: str) -> tuple[str, ...]:
    items = tuple(s.strip() for s in text.split(",") if s.strip())
    bad = [s for s in items if s not in ALL_SUITES]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown suite(s) {bad}; choose from {', '.join(ALL_SUITES)}")
    return items


def _add_grid_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="JSON document with SweepConfig fields; flags win")
    p.add_argument("--c", type=float, nargs="+", dest="c_list", help="curvature values c")
    p.add_argument("--n", type=float, nargs="+", dest="n_list", help="n values (filtered per c)")
    p.add_argument("--l", type=int, nargs="+", dest="l_list", help="trial counts l for c < 0")
    p.add_argument("--x-points", type=int, dest="x_points")
    p.add_argument("--x-max", type=float, dest="x_max", help="right end of the x grid for c >= 0")
    p.add_argument("--workers", type=int)
    p.add_argument("--out", type=Path)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ioc-bounds", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", help="evaluate S, its derivatives, entropies and all bounds at one point")
    pe.add_argument("--c", type=float, required=True)
    pe.add_argument("--n", type=float, required=True)
    pe.add_argument("--x", type=float, required=True)

    pv = sub.add_parser("verify", help="run the verification suites over a grid")
    _add_grid_flags(pv)
    pv.add_argument("--suites", type=_suite_list)
    pv.add_argument("--max-n", type=int, dest="max_n", help="largest n for the identity triangle")
    pv.add_argument("--tol", type=float, help="replace every non-strict check tolerance")

    ps = sub.add_parser("sweep", help="write a CSV of values and bounds over the grid")
    _add_grid_flags(ps)

    pi = sub.add_parser("identities", help="check both binomial-sum identities exactly")
    pi.add_argument("--max-n", type=int, dest="max_n", default=120)
    pi.add_argument("--out", type=Path)
    return parser


def _config(args: argparse.Namespace, **extra) -> SweepConfig:
    cfg = SweepConfig.from_json(args.config) if getattr(args, "config", None) else SweepConfig()
    changes = {k: getattr(args, k, None) for k in ("c_list", "n_list", "l_list", "x_points", "x_max", "workers", "max_n", "tol")}
    for key in ("c_list", "n_list", "l_list"):
        if changes[key] is not None:
            changes[key] = tuple(changes[key])
    if changes["n_list"] is not None and changes["l_list"] is None:
        # explicit n values replace the default trial-count list for c < 0
        changes["l_list"] = ()
    changes["suites"] = getattr(args, "suites", None)
    changes.update(extra)
    return with_overrides(cfg, **changes)


def cmd_eval(args: argparse.Namespace) -> int:
    params = FamilyParams(c=args.c, n=args.n)
    x = params.check_point(args.x)
    tri = ioc_triple(params, x)
    ent = entropies(params, x)
    report = bound_report(params, x)
    doc = {
        "c": params.c,
        "n": params.n,
        "l": params.l,
        "x": x,
        "S": report.value,
        "S1": tri.s1,
        "S2": tri.s2,
        "renyi2": ent.renyi2,
        "tsallis2": ent.tsallis2,
        "shannon": ent.shannon,
        "bounds": [asdict(b) for b in report.bounds],
        "pass": report.passed,
    }
    print(json.dumps(doc, indent=1))
    return EXIT_OK if report.passed else EXIT_FAIL


def _emit_report(report, out: Path | None) -> None:
    if out is not None:
        out.write_text(report.to_json() + "\n", encoding="utf-8")
    print(json.dumps({"summary": report.summary, "pass": report.passed}, indent=1, sort_keys=True))
    for r in report.failures()[:20]:
        print(f"FAIL {r['suite']}/{r['check']} c={r['c']} n={r['n']} x={r['x']} margin={r['margin']}", file=sys.stderr)


def cmd_verify(args: argparse.Namespace) -> int:
    report = verify(_config(args))
    _emit_report(report, args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_identities(args: argparse.Namespace) -> int:
    cfg = SweepConfig(suites=("identities",), max_n=args.max_n)
    report = verify(cfg)
    _emit_report(report, args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_sweep(args: argparse.Namespace) -> int:
    if args.out is None:
        raise SystemExit("sweep needs --out")
    cfg = _config(args)
    try:
        rows = sweep(cfg, args.out)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"wrote {rows} rows to {args.out}")
    return EXIT_OK


COMMANDS = {"eval": cmd_eval, "verify": cmd_verify, "sweep": cmd_sweep, "identities": cmd_identities}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (IocError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
