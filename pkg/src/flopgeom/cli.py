"""Command-line front end: ``flopgeom <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .cones import (Ray, SheetedCone, flop_subdivision, pagoda, sigma, sigma_rays,
                    singular_ray)
from .dual import DualPoint, dual_cone, pair
from .svg import emit_svg
from .theta import mirror_ideal, theta, verify_minors
from .tropu import FlopConfig
from .verify import run_verify


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _triple(flag: str):
    def parse(text: str) -> tuple:
        parts = text.split(",")
        try:
            if len(parts) != 3:
                raise ValueError
            return tuple(int(p) for p in parts)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{flag}: expected three integers a,b,c, got {text!r}")
    return parse


def _dual_point(text: str) -> DualPoint:
    m = re.fullmatch(r"(V[12]):(-?\d+),(-?\d+),(-?\d+)", text)
    if not m:
        raise argparse.ArgumentTypeError(f"--v: expected V1:a,b,c or V2:a,b,c, got {text!r}")
    try:
        return DualPoint(m.group(1), tuple(int(g) for g in m.group(2, 3, 4)))
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"--v: {e}")


_RAY_TOKEN = re.compile(r"(?:(?P<label>d[123]|L|f(?P<idx>\d+))|(?P<vec>-?\d+,-?\d+,-?\d+))(?:@(?P<sheet>-?\d+))?",
                        re.IGNORECASE)


def parse_ray(cfg: FlopConfig, token: str) -> Ray:
    """A ray token: d1, d2, d3, L, f<i> or x,y,z, optionally suffixed @sheet."""
    m = _RAY_TOKEN.fullmatch(token)
    if not m:
        raise ValueError(f"--cone: cannot parse ray {token!r}")
    sheet = int(m.group("sheet") or 0)
    if m.group("vec"):
        vec = tuple(int(x) for x in m.group("vec").split(","))
        ray = Ray(token.split("@")[0], vec, 0, "divisor")
    elif m.group("idx"):
        i = int(m.group("idx"))
        ray = Ray(f"F{i}", (i, i, 1), 0, "exceptional")
    elif m.group("label").upper() == "L":
        ray = singular_ray(cfg)
    else:
        ray = sigma_rays()[int(m.group("label")[1]) - 1]
    return ray.transport(cfg, sheet) if sheet else ray


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _complex_text(cx) -> str:
    lines = [f"{cx.side} subdivision, n={cx.cfg.n}: {len(cx.cells)} cells"]
    for cell in cx.cells:
        rays = " ".join(f"{r.label}{r.vector}" + (f"@{r.sheet}" if r.sheet else "") for r in cell.rays)
        lines.append(f"  cell [{rays}]" + (" winds" if cell.winds else ""))
    for wall in cx.walls:
        lines.append(f"  wall {wall.rays[0].label}|{wall.rays[1].label} curve {wall.curve}")
    return "\n".join(lines) + "\n"


def _render_complex(cx, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(cx.to_json(), sort_keys=True, indent=2) + "\n"
    if fmt == "svg":
        return emit_svg(cx)
    return _complex_text(cx)


def cmd_verify(args) -> int:
    report = run_verify(args.n_max, fault="monodromy" if args.inject_fault else None)
    sys.stdout.write(report.render())
    return report.exit_status


def cmd_subdivide(args) -> int:
    cfg = FlopConfig.canonical(args.n)
    _emit(_render_complex(flop_subdivision(cfg, args.side), args.format), args.out)
    return 0


def cmd_pagoda(args) -> int:
    cfg = FlopConfig.canonical(args.n)
    _emit(_render_complex(pagoda(cfg), args.format), args.out)
    return 0


def cmd_theta(args) -> int:
    cfg = FlopConfig.canonical(args.n)
    sys.stdout.write(f"{theta(cfg, args.point)}\n")
    return 0


def cmd_mirror(args) -> int:
    cfg = FlopConfig.canonical(args.n)
    ideal = mirror_ideal(args.n)
    check = verify_minors(cfg) if args.check else None
    if args.format == "json":
        doc = {"matrix": [[str(e) for e in row] for row in ideal.matrix],
               "minors": [str(g) for g in ideal.generators],
               "verified": bool(check) if check is not None else None}
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        for row in ideal.matrix:
            sys.stdout.write("[ " + " | ".join(str(e) for e in row) + " ]\n")
        for (i, j), g in zip(ideal.column_pairs, ideal.generators):
            sys.stdout.write(f"minor({i},{j}) = {g}\n")
        if check is not None:
            sys.stdout.write(f"{'verified' if check else 'FAILED'}: {check.detail}\n")
    return 0 if check is None or check else 1


def cmd_pair(args) -> int:
    cfg = FlopConfig.canonical(args.n)
    value = pair(cfg, args.u, args.v)
    sys.stdout.write(f"{Fraction(value)}\n")
    return 0


def cmd_dual(args) -> int:
    cfg = FlopConfig.canonical(args.n)
    if len(args.cone) == 1 and args.cone[0].lower() == "sigma":
        cone = sigma(cfg)
    else:
        cone = SheetedCone(tuple(parse_ray(cfg, t) for t in args.cone), winds=args.winds)
    sys.stdout.write(json.dumps(dual_cone(cfg, cone).to_json(), sort_keys=True, indent=2) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flopgeom", description="Exact combinatorics of (-2,0)-flops.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run every identity for n = 1..n-max")
    p.add_argument("--n-max", type=_positive, required=True)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("subdivide", help="one of the two flop subdivisions of sigma")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--side", choices=("A", "B"), required=True)
    p.add_argument("--format", choices=("text", "json", "svg"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_subdivide)

    p = sub.add_parser("pagoda", help="the smooth subdivision at f1..fn")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--format", choices=("text", "json", "svg"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_pagoda)

    p = sub.add_parser("theta", help="theta function of an integral point")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--point", type=_triple("--point"), required=True)
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("mirror", help="the theta matrix and its 2x2 minors")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--check", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_mirror)

    p = sub.add_parser("pair", help="evaluate the pairing <u, v>")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--u", type=_triple("--u"), required=True)
    p.add_argument("--v", type=_dual_point, required=True)
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("dual", help="dual cone and Hilbert bases of a cell")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--cone", nargs="+", required=True, metavar="RAY")
    p.add_argument("--winds", action="store_true", help="the cell loops once around the singular line")
    p.set_defaults(func=cmd_dual)
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as e:
        parser.exit(2, f"{parser.prog} {args.command}: error: {e}\n")
    except OSError as e:
        parser.exit(1, f"{parser.prog} {args.command}: {e}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
