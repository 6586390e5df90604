"""Command-line front end.

Exit codes report whether the command could run, never what it found:
0 on completion (whatever the verdict), 2 on bad input or unwritable output,
3 when a constructor reports "construction not found".
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from .criteria import Params, classify_chaos, construct_hyper_eps_ly_pair, construct_hyper_ly_pair
from .hyperspace import VietorisBox, hausdorff_distance, induced_orbit
from .intervals import CompactSet, DomainError, Interval, fmt, rational
from .pairs import DEFAULT_HORIZON, DEFAULT_TOL, classify_point_pair, classify_set_pair, scan_pairs
from .pl_map import MapFormatError, PLMap, builtin_map, dump_map_json, parse_map_json, point_orbit
from .shift_space import verify_example

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NOT_FOUND = 3


class CLIError(Exception):
    """Bad input; reported on stderr with exit code 2."""


def load_map(source: str) -> PLMap:
    """A builtin name (tent, identity, flip, 1-x, two-hump, twin-tent, snoha:D) or a JSON file."""
    path = Path(source)
    if path.suffix == ".json" or path.exists():
        try:
            text = path.read_text()
        except OSError as exc:
            raise CLIError(f"cannot read map file {source}: {exc.strerror}") from exc
        return parse_map_json(text)
    return builtin_map(source)


def _region(text: str) -> tuple[Interval, Interval]:
    parts = text.split(",")
    if len(parts) != 2:
        raise CLIError('region must look like "lo..hi,lo..hi"')
    return Interval.parse(parts[0]), Interval.parse(parts[1])


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    try:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    except OSError as exc:
        raise CLIError(f"cannot write {out}: {exc.strerror}") from exc


def _eps_required(args) -> Fraction:
    if args.eps is None:
        raise CLIError("--eps is required for this command (it is part of the claim under test)")
    return args.eps


def _series_csv(dists) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "distance", "distance_float"])
    for n, d in enumerate(dists):
        w.writerow([n, fmt(d), f"{float(d):.6g}"])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# commands


def cmd_classify(args) -> int:
    m = load_map(args.map)
    params = Params(horizon=args.horizon, tol_low=args.tol, eps=args.eps, grid=args.grid or 6)
    verdict = classify_chaos(m, params)
    if args.json:
        _emit(verdict.to_json(), args.out)
    else:
        sys.stdout.write(verdict.table() + "\n")
        if args.out:
            _emit(verdict.to_json(), args.out)
    return EXIT_OK


def cmd_pair(args) -> int:
    m = load_map(args.map)
    eps = _eps_required(args)
    if args.x is not None and args.y is not None:
        v = classify_point_pair(m, rational(args.x), rational(args.y), args.horizon, args.tol, eps)
    elif args.set_a is not None and args.set_b is not None:
        v = classify_set_pair(m, CompactSet.parse(args.set_a), CompactSet.parse(args.set_b),
                              args.horizon, args.tol, eps)
    else:
        raise CLIError("give either --x/--y or --set-a/--set-b")
    if args.csv:
        _emit(_series_csv(v.stats.distances), args.out)
    else:
        _emit(json.dumps(v.to_dict(), indent=2, sort_keys=True) + "\n" + _series_csv(v.stats.distances),
              args.out)
    return EXIT_OK


def cmd_construct(args) -> int:
    m = load_map(args.map)
    bu, bv = VietorisBox.parse(args.box_u), VietorisBox.parse(args.box_v)
    params = Params(horizon=args.horizon, tol_low=args.tol, eps=args.eps)
    if args.eps is not None:
        res = construct_hyper_eps_ly_pair(m, bu, bv, args.eps, params)
    else:
        res = construct_hyper_ly_pair(m, bu, bv, params)
    _emit(res.to_json(), args.out)
    if not res.found:
        sys.stderr.write(f"construction not found: {res.failed_stage}\n")
        return EXIT_NOT_FOUND
    return EXIT_OK


def cmd_scan(args) -> int:
    m = load_map(args.map)
    eps = _eps_required(args)
    region = _region(args.region) if args.region else (Interval(0, 1), Interval(0, 1))
    rep = scan_pairs(m, region, args.grid or 8, args.horizon, args.tol, eps)
    _emit(rep.to_csv() if args.csv else rep.to_json(), args.out)
    return EXIT_OK


def render_svg(m: PLMap, size: int = 400, pad: int = 20) -> str:
    """Graph of the map with the diagonal; deterministic text output."""

    def px(x: Fraction) -> str:
        return f"{pad + float(x) * size:.3f}"

    def py(y: Fraction) -> str:
        return f"{pad + (1 - float(y)) * size:.3f}"

    total = size + 2 * pad
    pts = " ".join(f"{px(x)},{py(y)}" for x, y in m.nodes)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{total}" height="{total}" '
        f'viewBox="0 0 {total} {total}">',
        f'<rect x="{pad}" y="{pad}" width="{size}" height="{size}" fill="none" stroke="#999" '
        'stroke-dasharray="4 3"/>',
        f'<line x1="{px(Fraction(0))}" y1="{py(Fraction(0))}" x2="{px(Fraction(1))}" y2="{py(Fraction(1))}" '
        'stroke="#777" stroke-width="0.8"/>',
        f'<polyline points="{pts}" fill="none" stroke="#000" stroke-width="1.5"/>',
        "</svg>",
    ]
    return "\n".join(lines) + "\n"


def cmd_plot(args) -> int:
    m = load_map(args.map)
    _emit(render_svg(m), args.out)
    return EXIT_OK


def cmd_shift_demo(args) -> int:
    try:
        rep = verify_example(args.k, args.horizon)
    except DomainError as exc:
        raise CLIError(str(exc)) from exc
    if args.json:
        _emit(rep.to_json(), args.out)
    else:
        lines = [f"t={t} d_H={fmt(d)} closed_form={fmt(e)}" for t, (d, e) in enumerate(zip(rep.series, rep.expected))]
        lines.append(f"census pairs asymptotic: {rep.census_asymptotic} ({rep.census_pairs} pairs)")
        lines.append(f"closed form: {'pass' if rep.closed_form_ok else 'fail'}")
        lines.append(f"overall: {'pass' if rep.passed else 'fail'}")
        _emit("\n".join(lines), args.out)
    return EXIT_OK


def cmd_hausdorff(args) -> int:
    d = hausdorff_distance(CompactSet.parse(args.set_a), CompactSet.parse(args.set_b))
    _emit(fmt(d), args.out)
    return EXIT_OK


def cmd_orbit(args) -> int:
    m = load_map(args.map)
    if args.x is not None:
        items = [fmt(v) for v in point_orbit(m, rational(args.x), args.horizon)]
    elif args.set_a is not None:
        items = [str(s) for s in induced_orbit(m, CompactSet.parse(args.set_a), args.horizon)]
    else:
        raise CLIError("give --x or --set-a")
    _emit("\n".join(f"{n},{v}" for n, v in enumerate(items)), args.out)
    return EXIT_OK


def cmd_dump_map(args) -> int:
    _emit(dump_map_json(load_map(args.map)), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------


def _rat(text: str) -> Fraction:
    try:
        return rational(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperchaos", description="Exact chaos checks for PL interval maps.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, horizon=DEFAULT_HORIZON, with_map=True):
        if with_map:
            p.add_argument("--map", default="tent", help="builtin name or JSON map file")
        p.add_argument("--horizon", type=int, default=horizon)
        p.add_argument("--tol", type=_rat, default=DEFAULT_TOL, help="tol_low as p/q")
        p.add_argument("--eps", type=_rat, default=None)
        p.add_argument("--grid", type=int, default=None)
        p.add_argument("--region", default=None, help='"lo..hi,lo..hi"')
        p.add_argument("--out", default=None)
        fmt_group = p.add_mutually_exclusive_group()
        fmt_group.add_argument("--json", action="store_true")
        fmt_group.add_argument("--csv", action="store_true")
        return p

    common(sub.add_parser("classify", help="aggregate chaos verdict")).set_defaults(func=cmd_classify)
    p = common(sub.add_parser("pair", help="classify a point pair or a set pair"))
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--set-a")
    p.add_argument("--set-b")
    p.set_defaults(func=cmd_pair)
    p = common(sub.add_parser("construct", help="build an (ε-)LY pair of finite sets in two boxes"))
    p.add_argument("--box-u", required=True, help='e.g. "(0,1/4);(1/2,1)"')
    p.add_argument("--box-v", required=True)
    p.set_defaults(func=cmd_construct)
    common(sub.add_parser("scan", help="grid scan for (ε-)LY pairs")).set_defaults(func=cmd_scan)
    common(sub.add_parser("plot", help="SVG graph of the map")).set_defaults(func=cmd_plot)
    p = common(sub.add_parser("shift-demo", help="verify the shift-space example"), horizon=19, with_map=False)
    p.add_argument("--k", type=int, default=6)
    p.set_defaults(func=cmd_shift_demo)
    p = common(sub.add_parser("hausdorff", help="Hausdorff distance of two sets"), with_map=False)
    p.add_argument("--set-a", required=True)
    p.add_argument("--set-b", required=True)
    p.set_defaults(func=cmd_hausdorff)
    p = common(sub.add_parser("orbit", help="orbit of a point or a set"), horizon=16)
    p.add_argument("--x")
    p.add_argument("--set-a")
    p.set_defaults(func=cmd_orbit)
    common(sub.add_parser("dump-map", help="write the map as JSON")).set_defaults(func=cmd_dump_map)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MapFormatError as exc:
        sys.stderr.write(f"map error: {exc}\n")
    except (CLIError, DomainError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
    return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
