"""Command-line front end.

Exit codes: 0 success, 1 a violation was found, 2 usage or format error,
3 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .coloring import STRATEGIES, canonicalize, k_color
from .experiment import run_experiment
from .generate import KINDS, generate, search_p2_lower_bound
from .geometry import DegenerateTriangleError, parse_triangle
from .io import (FormatError, Instance, dump_coloring, dump_points, dump_trace, load_coloring,
                 read_instance, violation_doc, write_text)
from .ranges import enumerate_ranges
from .render import render_svg
from .verify import (InvariantError, PreconditionError, empirical_threshold, verify,
                     witness_extract)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


def _instance(args) -> Instance:
    inst = read_instance(args.input)
    if getattr(args, "triangle", None):
        inst.triangle = parse_triangle(args.triangle)
    return inst


def _coloring(path: str, n: int):
    with open(path, encoding="utf-8") as fh:
        col = load_coloring(fh.read())
    if len(col) != n:
        raise FormatError(f"coloring has {len(col)} entries for {n} points")
    return col


def _setup(args):
    inst = _instance(args)
    points, A = canonicalize(list(inst.points), inst.triangle)
    return inst, points, A, enumerate_ranges(points)


def cmd_gen(args) -> int:
    inst = generate(args.kind, args.n, args.seed, {"denominator": args.denominator})
    write_text(args.out, dump_points(inst))
    return EXIT_OK


def cmd_color(args) -> int:
    inst = _instance(args)
    res = k_color(list(inst.points), inst.triangle, args.k, args.strategy, args.seed)
    write_text(args.out, dump_coloring(res.coloring))
    print(f"k={args.k} empirical={res.empirical.threshold} theoretical={res.theoretical.threshold}",
          file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    inst, points, A, catalog = _setup(args)
    col = _coloring(args.coloring, len(points))
    viol = verify(catalog, col, args.threshold)
    if viol is None:
        print(f"ok: every range with >= {args.threshold} points has all {col.k} colours")
        return EXIT_OK
    print(json.dumps(violation_doc(viol, A.inverse()), indent=2))
    return EXIT_VIOLATION


def cmd_empirical(args) -> int:
    inst, points, A, catalog = _setup(args)
    print(empirical_threshold(catalog, _coloring(args.coloring, len(points))))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    inst, points, A, catalog = _setup(args)
    write_text(args.out, catalog.to_csv())
    return EXIT_OK


def cmd_extract(args) -> int:
    inst, points, A, catalog = _setup(args)
    phi = _coloring(args.coloring, len(points))
    phi2 = _coloring(args.refined, len(points))
    bound = args.c * args.c * args.threshold
    viol = verify(catalog, phi2, bound)
    if viol is None:
        print(f"ok: refined coloring has every colour in ranges with >= {bound} points")
        return EXIT_OK
    trace = witness_extract(points, phi, phi2, viol, args.c, args.threshold)
    write_text(args.out, dump_trace(trace, A.inverse()))
    return EXIT_VIOLATION


def cmd_search(args) -> int:
    res = search_p2_lower_bound(args.n_max, args.budget, args.seed)
    print(f"best optimal 2-coloring threshold {res.threshold} after {res.tried} instances")
    if res.instance is not None and args.out:
        inst = res.instance
        inst.metadata["optimal_threshold"] = str(res.threshold)
        write_text(args.out, dump_points(inst))
    return EXIT_OK


def cmd_experiment(args) -> int:
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            config = json.load(fh)
    else:
        config = {}
    report = run_experiment(config, args.jobs)
    write_text(args.out, report.to_csv(timing=args.timing))
    return EXIT_OK


def cmd_render(args) -> int:
    inst, points, A, catalog = _setup(args)
    colors = highlight = None
    if args.coloring:
        col = _coloring(args.coloring, len(points))
        colors = col.colors
        viol = verify(catalog, col, 1)
        highlight = viol.homothet if viol else None
    write_text(args.out, render_svg(list(inst.points), inst.triangle, colors, highlight,
                                    A.inverse()))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polychrome", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_, inp=True, tri=True):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        if inp:
            p.add_argument("--input", required=True, help="point file")
        if tri:
            p.add_argument("--triangle", help='"x0,y0 x1,y1 x2,y2" (default: from file, else unit)')
        p.add_argument("--out", help="output file (default stdout)")
        return p

    p = add("gen", cmd_gen, "generate a point file", inp=False, tri=False)
    p.add_argument("--kind", choices=KINDS, default="uniform-random")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--denominator", type=int, default=10_000)

    p = add("color", cmd_color, "k-color a point file")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--strategy", choices=STRATEGIES, default="exact")
    p.add_argument("--seed", type=int, default=0)

    p = add("verify", cmd_verify, "check a coloring at a threshold")
    p.add_argument("--coloring", required=True)
    p.add_argument("--threshold", type=int, required=True)

    p = add("empirical", cmd_empirical, "print the empirical threshold of a coloring")
    p.add_argument("--coloring", required=True)

    add("enumerate", cmd_enumerate, "write the range catalog as CSV")

    p = add("extract-witness", cmd_extract, "replay the doubling argument on a violation")
    p.add_argument("--coloring", required=True, help="parent k-coloring")
    p.add_argument("--refined", required=True, help="refined 2k-coloring")
    p.add_argument("--threshold", type=int, required=True, help="parent threshold t")
    p.add_argument("--c", type=int, required=True, help="split threshold c")

    p = add("search-p2", cmd_search, "search small sets forcing a 2-coloring threshold of 4",
            inp=False, tri=False)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--budget", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)

    p = add("experiment", cmd_experiment, "run a batch experiment from a JSON config",
            inp=False, tri=False)
    p.add_argument("--config")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="add a wall_ms column")

    p = add("render", cmd_render, "draw an instance as SVG")
    p.add_argument("--coloring")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, DegenerateTriangleError, PreconditionError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantError as exc:
        print(f"internal invariant failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
