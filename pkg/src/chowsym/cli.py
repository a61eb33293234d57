"""Command-line interface: ``chowsym <verb> [options]``.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import chow_engine
from .double_cover import (
    fiber_dimension, fibration_image, orbit_splits, stabilizer_component_order,
)
from .export import export_dot, export_json
from .orbit_poset import GraphTooLarge, Orbit, build_orbit_graph
from .perm_core import enumerate_involutions, parse_involution
from .verify import run_suite

log = logging.getLogger("chowsym")


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _table(header: list[str], rows: list[list]) -> str:
    cells = [header] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[k]) for r in cells) for k in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    return "\n".join(lines) + "\n"


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _orbit_row(o: Orbit) -> dict:
    return {"one_line": list(o.w.images), "cycles": o.w.cycle_notation(), "codim": o.codim,
            "stratum": o.stratum, "fpf": o.fpf}


def cmd_involutions(args) -> int:
    m = 2 * args.n
    if args.orbit:
        orbits = [Orbit.of(parse_involution(args.orbit, m))]
    else:
        orbits = [Orbit.of(w) for w in enumerate_involutions(m, args.fpf_only)]
    if args.format == "json":
        _emit(_dump([_orbit_row(o) for o in orbits]), args.out)
    else:
        rows = [[o.w.cycle_notation(), " ".join(map(str, o.w.images)), o.codim, o.stratum,
                 "yes" if o.fpf else "no", stabilizer_component_order(o.w)] for o in orbits]
        _emit(_table(["cycles", "one_line", "codim", "stratum", "fpf", "|pi0 Stab_T|"], rows),
              args.out)
    return 0


def cmd_graph(args) -> int:
    g = build_orbit_graph(args.n, args.fpf_only, workers=args.workers,
                          max_n_override=args.max_n_override)
    if args.format == "json":
        doc = export_json(g)
    elif args.format == "dot":
        doc = export_dot(g)
    else:
        rows = [[f"O_{e.source}", f"O_{e.target}", "cross" if e.cross_stratum else "same"]
                for e in g.edges]
        _emit(_table(["source (deeper)", "target", "stratum"], rows), args.out)
        return 0
    _emit(doc.text(), args.out)
    return 0


def cmd_strata(args) -> int:
    m = 2 * args.n
    orbits = [Orbit.of(w) for w in enumerate_involutions(m, args.fpf_only)]
    report = []
    for i in range(1, m + 1):
        members = [o for o in orbits if o.stratum == i]
        deepest_free = min((o for o in members if o.fpf), key=lambda o: o.codim, default=None)
        report.append({
            "stratum": i,
            "codim": m - i,
            "orbits": len(members),
            "fpf_orbits": sum(o.fpf for o in members),
            "closure_strata": list(range(1, i + 1)),
            "min_codim_fpf_orbit": deepest_free.w.cycle_notation() if deepest_free else None,
            "fiber_dim": fiber_dimension(args.n, i) if i < m else None,
        })
    if args.format == "json":
        _emit(_dump(report), args.out)
    else:
        rows = [[r["stratum"], r["codim"], r["orbits"], r["fpf_orbits"],
                 r["min_codim_fpf_orbit"] or "-", r["fiber_dim"] if r["fiber_dim"] else "-"]
                for r in report]
        _emit(_table(["X_i", "codim", "orbits", "fpf", "min-codim fpf orbit", "fiber dim"],
                     rows), args.out)
    return 0


def cmd_fiber(args) -> int:
    m = 2 * args.n
    if args.orbit:
        w = parse_involution(args.orbit, m)
        i = w(m)
        if i == m:
            raise UsageError(f"{w} lies in X_{m}, where no fibration is defined")
        image = fibration_image(w)
        result = {"orbit": w.cycle_notation(), "stratum": i,
                  "image": image.cycle_notation(), "image_one_line": list(image.images),
                  "fiber_dim": fiber_dimension(args.n, i),
                  "splits": orbit_splits(w), "image_splits": orbit_splits(image)}
        if args.format == "json":
            _emit(_dump(result), args.out)
        else:
            _emit(_table(list(result), [list(result.values())]), args.out)
        return 0
    rows = [{"i": i, "fiber_dim": fiber_dimension(args.n, i)} for i in range(1, m)]
    if args.format == "json":
        _emit(_dump(rows), args.out)
    else:
        _emit(_table(["i", "fiber dim (C* x C^(2n+i-2))"],
                     [[r["i"], r["fiber_dim"]] for r in rows]), args.out)
    return 0


def cmd_chow(args) -> int:
    try:
        group = chow_engine.chow_group(args.n)
    except chow_engine.ChowConsistencyError as exc:
        log.error("%s", exc)
        return 1
    if args.format == "json":
        _emit(_dump({"n": args.n, "chow_group": group.to_dict()}), args.out)
    else:
        _emit(f"CH*(GL({2 * args.n})/SO({2 * args.n})) = {group}\n", args.out)
    return 0


def cmd_certify(args) -> int:
    try:
        cert = chow_engine.certificate(args.n)
    except chow_engine.CertificateError as exc:
        log.error("%s", exc)
        return 1
    _emit(_dump(cert), args.out)
    return 0


def cmd_verify(args) -> int:
    results = run_suite(args.up_to)
    text = "".join(r.line() + "\n" + "".join(f"      {f}\n" for f in r.failures)
                   for r in results)
    failed = sum(not r.passed for r in results)
    text += f"{len(results) - failed}/{len(results)} checks passed\n"
    _emit(text, args.out)
    return 1 if failed else 0


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=_positive, default=2, help="half-size n of GL(2n)")
    common.add_argument("--fpf-only", action="store_true", help="fixed-point-free orbits only")
    common.add_argument("--format", choices=["dot", "json", "table"], default="table")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--max-n-override", action="store_true",
                        help="allow n beyond the default graph-size caps")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="chowsym", description="B-orbits on GL(2n)/SO(2n) and its Chow groups.")
    sub = parser.add_subparsers(dest="verb", required=True)
    p = sub.add_parser("involutions", parents=[common], help="list orbits with invariants")
    p.add_argument("--orbit", help='spot query in cycle notation, e.g. "(1 6)(2 5)(3 4)"')
    p.set_defaults(func=cmd_involutions)
    p = sub.add_parser("graph", parents=[common], help="codim-1 closure graph of orbits")
    p.add_argument("--workers", type=_positive, default=1)
    p.set_defaults(func=cmd_graph)
    sub.add_parser("strata", parents=[common], help="stratification by X_i").set_defaults(
        func=cmd_strata)
    p = sub.add_parser("fiber", parents=[common], help="fibration image and fiber dimension")
    p.add_argument("--orbit")
    p.set_defaults(func=cmd_fiber)
    sub.add_parser("chow", parents=[common], help="graded Chow group").set_defaults(
        func=cmd_chow)
    sub.add_parser("certify", parents=[common], help="JSON certificate").set_defaults(
        func=cmd_certify)
    p = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    p.add_argument("--up-to", type=_positive, default=4)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, GraphTooLarge, ValueError) as exc:
        print(f"chowsym: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
