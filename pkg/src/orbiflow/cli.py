"""Command-line front end: verify, tiling, catmap.

Exit codes: 0 all checks pass, 1 verification failure, 2 usage/config error.
Config precedence: flags > ORBIFLOW_* environment variables > defaults.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from . import config as cfg
from . import render, report, torusmap, trigroup
from .trigroup import EnumerationError


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbiflow",
        description="Certified combinatorics of the five genus-1 sections "
                    "over triangle orbifolds and their surgery homology.")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the verification chain")
    v.add_argument("--case", default="all",
                   help="one of 237, 245, 246, 334, 344, or 'all'")
    v.add_argument("--json", dest="json_path", metavar="PATH",
                   help="write the machine-readable report to PATH")
    v.add_argument("--depth", type=int, help="adjacency word-length budget")
    v.add_argument("--tol", type=float, help="override geometric tolerances")
    v.add_argument("--timings", action="store_true",
                   help="include wall-clock timings in the JSON report "
                        "(omitted by default so reports are reproducible)")

    t = sub.add_parser("tiling", help="render a tiling to SVG")
    t.add_argument("--case", required=True)
    t.add_argument("--depth", type=int, default=4)
    t.add_argument("--out", required=True, metavar="PATH.svg")

    c = sub.add_parser("catmap", help="periodic-orbit table of the torus map")
    c.add_argument("--period", type=int, default=2)
    return parser


def _resolve_config(args) -> tuple[cfg.SearchConfig, cfg.Tolerances]:
    search = cfg.search_from_env()
    tol = cfg.tolerances_from_env()
    if getattr(args, "depth", None) is not None:
        if args.depth < 1:
            raise ValueError("depth must be >= 1")
        search = replace(search, adjacency_depth=args.depth,
                         tiling_depth=min(args.depth, search.tiling_depth))
    if getattr(args, "tol", None) is not None:
        if not 0 < args.tol < 1e-2:
            raise ValueError("tolerance must be in (0, 1e-2)")
        tol = cfg.Tolerances(eps_det=args.tol, eps_pt=args.tol,
                             eps_geo=args.tol, eps_sign=args.tol,
                             eps_cls=max(args.tol, tol.eps_cls),
                             eps_ang=max(args.tol, tol.eps_ang),
                             eps_dedup=max(args.tol, tol.eps_dedup))
    return search, tol


def _parse_case(raw: str) -> int | None:
    if raw == "all":
        return None
    try:
        case = int(raw)
    except ValueError:
        raise ValueError(f"unknown case {raw!r}")
    if case not in trigroup.CASES:
        raise ValueError(f"unknown case {case}; choose from "
                         f"{', '.join(map(str, trigroup.CASES))} or 'all'")
    return case


def _print_text_report(rep: report.VerificationReport) -> None:
    for case_rep in rep.cases:
        print(f"case {case_rep.case}:")
        for chk in case_rep.checks:
            mark = "ok " if chk.passed else "FAIL"
            print(f"  [{mark}] {chk.check_id}: expected {chk.expected!r}, "
                  f"got {chk.actual!r}")
        timing = sum(case_rep.timings.values())
        print(f"  ({timing:.2f}s)")
    print("global checks:")
    for chk in rep.global_checks.checks:
        mark = "ok " if chk.passed else "FAIL"
        print(f"  [{mark}] {chk.check_id}: expected {chk.expected!r}, "
              f"got {chk.actual!r}")
    print("VERIFICATION " + ("PASSED" if rep.passed else "FAILED"))


def cmd_verify(args) -> int:
    try:
        case = _parse_case(args.case)
        search, tol = _resolve_config(args)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    try:
        rep = report.run_verification(case, search, tol,
                                      include_timings=args.timings)
    except EnumerationError as err:
        print(f"error: enumeration (trigroup): {err}", file=sys.stderr)
        return 2
    _print_text_report(rep)
    if args.json_path:
        payload = json.dumps(rep.as_dict(), sort_keys=True, indent=2) + "\n"
        try:
            with open(args.json_path, "w") as fh:
                fh.write(payload)
        except OSError as err:
            print(f"error: cannot write {args.json_path}: {err}",
                  file=sys.stderr)
            return 2
    return 0 if rep.passed else 1


def cmd_tiling(args) -> int:
    try:
        case = _parse_case(args.case)
        if case is None:
            raise ValueError("tiling needs a single case, not 'all'")
        if args.depth < 1:
            raise ValueError("depth must be >= 1")
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    try:
        svg = render.tiling_svg(case, args.depth)
    except (EnumerationError, ValueError) as err:
        print(f"error: rendering: {err}", file=sys.stderr)
        return 2
    try:
        with open(args.out, "w") as fh:
            fh.write(svg)
    except OSError as err:
        print(f"error: cannot write {args.out}: {err}", file=sys.stderr)
        return 2
    print(f"wrote {args.out}")
    return 0


def cmd_catmap(args) -> int:
    n = args.period
    if not 1 <= n <= 12:
        print("error: period must be between 1 and 12 (exact-arithmetic guard)",
              file=sys.stderr)
        return 2
    cat = torusmap.CAT
    count = torusmap.periodic_point_count(cat, n)
    print(f"points of period dividing {n}: {count} = |det(A^{n} - I)|")
    power = cat.power(n)
    M = [[power.a - 1, power.b], [power.c, power.d - 1]]
    from . import intlinalg
    seen: set[torusmap.RationalPoint] = set()
    orbits = []
    for x, y in intlinalg.solve_mod1(M):
        p = torusmap.RationalPoint.of(x, y)
        if p in seen:
            continue
        orb = torusmap.orbit_of(cat, p)
        seen.update(orb.points)
        orbits.append(orb)
    orbits.sort(key=lambda o: (o.period, o.points[0].den, o.points[0].num_x,
                               o.points[0].num_y))
    for orb in orbits:
        pts = ", ".join(f"({p.num_x}/{p.den}, {p.num_y}/{p.den})"
                        for p in orb.points)
        print(f"  period {orb.period}: {pts}")
    total = sum(o.period for o in orbits)
    print(f"orbit check: {len(orbits)} orbits, {total} points")
    return 0 if total == count else 1


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        return cmd_verify(args)
    if args.command == "tiling":
        return cmd_tiling(args)
    if args.command == "catmap":
        return cmd_catmap(args)
    parser.error(f"unknown command {args.command}")
    return 2


if __name__ == "__main__":
    sys.exit(main())
