"""Command line front end: ``equilib <command> ...``.

Exit status is 0 on success, 2 when the result has degenerate equilibria
and 1 for every other failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction

from . import __version__
from .complexity import grid
from .constructions import (ConwayParams, build_class, conway_solid, mono_unstable_pyramid, replay,
                            tilted_pyramid)
from .constructions.recipe import load as load_recipe
from .equilibria import analyze
from .errors import DegenerateEquilibria, EquilibError, NotConvex
from .geometry import mass_properties, polar_dual, validate
from .off import emit_off, parse_off, polyhedron_hash
from .report import analysis_report, grid_csv
from .search import tetrahedron_survey

EXIT_OK, EXIT_FAIL, EXIT_DEGENERATE = 0, 1, 2

log = logging.getLogger("equilib")


def default_seed(fallback: int = 0) -> int:
    val = os.environ.get("EQUILIB_SEED")
    return int(val) if val not in (None, "") else fallback


def _pair(text: str, kind=int):
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected two comma-separated values, got {text!r}")
    return tuple(kind(p) for p in parts)


def _vec3(text: str):
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected x,y,z, got {text!r}")
    try:
        return tuple(Fraction(p) for p in parts)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad coordinates {text!r}") from None


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad rational {text!r}") from None


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_valid(path: str):
    text = _read(path)
    P = parse_off(text, os.path.basename(path))
    vr = validate(P)
    if not vr.ok:
        raise NotConvex("; ".join(str(vr).splitlines()[:5]), vr)
    return P, text


# ---------------------------------------------------------------- commands

def cmd_analyze(args) -> int:
    P, text = _load_valid(args.input)
    c = args.ref if args.ref is not None else None
    rep = analyze(P, c, exact=False if args.float else None)
    data = analysis_report(P, rep, text)
    if args.json:
        _write(args.json, json.dumps(data, indent=2) + "\n")
    if rep.degenerate:
        print(f"degenerate equilibria at {rep.degenerate_sites()}", file=sys.stderr)
        return EXIT_DEGENERATE
    print(f"f={P.f} v={P.v} e={P.e}  S={rep.S} U={rep.U} H={rep.H}  C={data['complexity']}")
    return EXIT_OK


def _emit(P, args) -> None:
    _write(args.out, emit_off(P, decimal=args.decimal))


def cmd_construct(args) -> int:
    S, U = args.cls
    P, recipe = build_class(S, U, polar=args.polar)
    if args.recipe:
        _write(args.recipe, recipe.dumps())
    _emit(P, args)
    return EXIT_OK


def cmd_replay(args) -> int:
    recipe = load_recipe(args.recipe)
    P = replay(recipe, verify=not args.no_verify)
    _emit(P, args)
    print(polyhedron_hash(P), file=sys.stderr)
    return EXIT_OK


def cmd_grid(args) -> int:
    S_max, U_max = args.max
    cells = grid(S_max, U_max)
    text = grid_csv(cells)
    _write(args.csv, text)
    if args.svg:
        from .plotting import save_grid_svg
        save_grid_svg(cells, S_max, U_max, args.svg)
    return EXIT_OK


def cmd_polar(args) -> int:
    P, _ = _load_valid(args.input)
    o = args.ref if args.ref is not None else mass_properties(P).centroid
    _emit(polar_dual(P, o), args)
    return EXIT_OK


def _conway_params(args) -> ConwayParams:
    p = ConwayParams()
    kw = {}
    for k in ("m", "a", "b"):
        if getattr(args, k, None) is not None:
            kw[k] = getattr(args, k)
    return ConwayParams(**{**p.__dict__, **kw})


def cmd_conway(args) -> int:
    _emit(conway_solid(_conway_params(args)), args)
    return EXIT_OK


def cmd_mono_pyramid(args) -> int:
    params = ConwayParams()
    if args.tilt is not None:
        P = tilted_pyramid(params, args.tilt)
    else:
        P = mono_unstable_pyramid(params, symmetric=not args.asym)
    _emit(P, args)
    return EXIT_OK


def cmd_survey(args) -> int:
    if not args.tetra:
        raise EquilibError("only --tetra surveys are implemented")
    seed = args.seed if args.seed is not None else default_seed()
    res = tetrahedron_survey(args.trials, seed)
    _write(args.json, json.dumps(res.to_dict(), indent=2) + "\n")
    return EXIT_OK


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="equilib", description="Static equilibria of convex polyhedra.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true", help="log construction progress")
    sub = ap.add_subparsers(dest="command", required=True)

    def output_opts(p):
        p.add_argument("-o", "--out", help="output OFF file (default: stdout)")
        p.add_argument("--decimal", action="store_true", help="write rounded decimals instead of fractions")

    p = sub.add_parser("analyze", help="classify the equilibria of an OFF solid")
    p.add_argument("input", help="OFF file, or - for stdin")
    p.add_argument("--ref", type=_vec3, help="reference point x,y,z (default: centre of mass)")
    p.add_argument("--json", help="write the analysis report here")
    p.add_argument("--float", action="store_true", help="use the floating-point backend")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("construct", help="build a witness in an equilibrium class")
    p.add_argument("--class", dest="cls", type=_pair, required=True, metavar="S,U")
    p.add_argument("--recipe", help="write the construction recipe here")
    p.add_argument("--polar", action="store_true", help="use the polar route for S > 2U - 4")
    output_opts(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("replay", help="rebuild a solid from a recipe")
    p.add_argument("recipe")
    p.add_argument("--no-verify", action="store_true")
    output_opts(p)
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("grid", help="complexity bounds on the (S, U) grid")
    p.add_argument("--max", type=_pair, required=True, metavar="S,U")
    p.add_argument("--csv", help="CSV output (default: stdout)")
    p.add_argument("--svg", help="also draw the grid as SVG")
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("polar", help="polar dual of an OFF solid")
    p.add_argument("input")
    p.add_argument("--ref", type=_vec3, help="pole x,y,z (default: centre of mass)")
    output_opts(p)
    p.set_defaults(func=cmd_polar)

    p = sub.add_parser("conway", help="mono-stable prism on the spiral polygon")
    p.add_argument("--m", type=int)
    p.add_argument("--a", type=_rational)
    p.add_argument("--b", type=_rational)
    output_opts(p)
    p.set_defaults(func=cmd_conway)

    p = sub.add_parser("mono-pyramid", help="mono-unstable pyramid on the spiral polygon")
    p.add_argument("--asym", action="store_true", help="move the apex off the mirror plane")
    p.add_argument("--tilt", type=_rational, help="tilted variant with tan(angle/2) = TILT")
    output_opts(p)
    p.set_defaults(func=cmd_mono_pyramid)

    p = sub.add_parser("survey", help="random sampling of equilibrium classes")
    p.add_argument("--tetra", action="store_true", help="sample random tetrahedra")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, help="default: $EQUILIB_SEED or 0")
    p.add_argument("--json", help="output file (default: stdout)")
    p.set_defaults(func=cmd_survey)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except DegenerateEquilibria as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (EquilibError, OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
