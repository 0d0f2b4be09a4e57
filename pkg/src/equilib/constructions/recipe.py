"""Replayable construction logs.

A recipe names a base solid and lists explicit manipulation steps with
their tuned rational parameters.  Text form, one record per line::

    # equilib recipe v1
    BASE pyramid S=4
    TARGET 5,6
    STEP truncate_vertex site=0 params=1/2,-3/4,0,1/8
    HASH sha256:...

Replaying never searches, so the result is bit-identical everywhere.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from ..equilibria import analyze
from ..errors import ClassNotAchieved, ParseError, ReplayMismatch, UnknownCatalogEntry
from ..geometry import Polyhedron, hull_from_points, polar_dual, regular_tetrahedron
from ..off import format_scalar, polyhedron_hash
from .catalog import catalog, pyramid
from .conway import ConwayParams, conway_solid, mono_unstable_pyramid, tilted_pyramid, twisted_conway
from .manipulations import APPLY, DELTAS, Step

VERSION = "v1"
HEADER = f"# equilib recipe {VERSION}"


def _conway_params(args) -> ConwayParams:
    p = ConwayParams()
    kw = {k: args[k] for k in ("r0", "a", "b") if k in args}
    if "m" in args:
        kw["m"] = int(args["m"])
    return replace(p, **kw)


BASES = {
    "pyramid": lambda a: pyramid(int(a["S"])),
    "catalog": lambda a: catalog(int(a["S"]), int(a["U"])),
    "regular_tetrahedron": lambda a: regular_tetrahedron(),
    "conway": lambda a: conway_solid(_conway_params(a)),
    "twisted_conway": lambda a: twisted_conway(_conway_params(a), a.get("tau", Fraction(1, 256))),
    "mono_pyramid": lambda a: mono_unstable_pyramid(_conway_params(a), bool(a.get("symmetric", 1))),
    "tilted_pyramid": lambda a: tilted_pyramid(_conway_params(a), a.get("t", Fraction(1, 1024))),
}


def apply_polar(P: Polyhedron, site, params) -> Polyhedron:
    return polar_dual(P, tuple(params))


def apply_move_vertex(P: Polyhedron, site, params) -> Polyhedron:
    """Replace one vertex keeping the face cycles (used after float recentering)."""
    (q,) = site
    verts = list(P.vertices)
    verts[q] = tuple(params)
    return hull_from_points(verts, P.name)


STEPS = dict(APPLY, polar=apply_polar, move_vertex=apply_move_vertex)


@dataclass
class Recipe:
    base: str
    base_args: dict = field(default_factory=dict)
    target: Optional[tuple] = None
    steps: list = field(default_factory=list)
    hash: Optional[str] = None

    def add(self, step: Step) -> "Recipe":
        self.steps.append(step)
        return self

    # -- text form
    def dumps(self) -> str:
        args = "".join(f" {k}={format_scalar(v)}" for k, v in sorted(self.base_args.items()))
        out = [HEADER, f"BASE {self.base}{args}"]
        if self.target is not None:
            out.append(f"TARGET {self.target[0]},{self.target[1]}")
        for st in self.steps:
            site = ",".join(str(i) for i in st.site)
            params = ",".join(format_scalar(x) for x in st.params)
            out.append(f"STEP {st.name} site={site} params={params}")
        if self.hash:
            out.append(f"HASH {self.hash}")
        return "\n".join(out) + "\n"

    @classmethod
    def loads(cls, text: str) -> "Recipe":
        rec = None
        for ln, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            word, _, rest = line.partition(" ")
            fields = rest.split()
            if word == "BASE":
                if rec is not None or not fields:
                    raise ParseError("exactly one BASE line must come first", ln)
                if fields[0] not in BASES:
                    raise ParseError(f"unknown base {fields[0]!r}", ln)
                rec = cls(fields[0], dict(_kv(f, ln) for f in fields[1:]))
                continue
            if rec is None:
                raise ParseError(f"{word} before BASE", ln)
            if word == "TARGET":
                try:
                    S, U = (int(x) for x in rest.split(","))
                except ValueError:
                    raise ParseError(f"bad TARGET {rest!r}", ln) from None
                rec.target = (S, U)
            elif word == "STEP":
                rec.steps.append(_step(fields, ln))
            elif word == "HASH":
                rec.hash = rest.strip()
            else:
                raise ParseError(f"unknown record {word!r}", ln)
        if rec is None:
            raise ParseError("no BASE line", 1)
        return rec


def _rational(tok: str, ln: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {tok!r}", ln) from None


def _kv(tok: str, ln: int):
    k, sep, v = tok.partition("=")
    if not sep:
        raise ParseError(f"expected key=value, got {tok!r}", ln)
    return k, _rational(v, ln)


def _step(fields, ln) -> Step:
    if not fields or fields[0] not in STEPS:
        raise ParseError(f"unknown step {fields[0] if fields else ''!r}", ln)
    kv = dict(f.partition("=")[::2] for f in fields[1:])
    if set(kv) != {"site", "params"}:
        raise ParseError("STEP needs site= and params=", ln)
    try:
        site = tuple(int(x) for x in kv["site"].split(",") if x)
    except ValueError:
        raise ParseError(f"bad site {kv['site']!r}", ln) from None
    params = tuple(_rational(x, ln) for x in kv["params"].split(",") if x)
    return Step(fields[0], site, params)


def build_base(name: str, args: dict) -> Polyhedron:
    try:
        return BASES[name](args)
    except KeyError as exc:
        raise UnknownCatalogEntry(f"base {name!r} is missing argument {exc}") from None


def replay(recipe: Recipe, verify: bool = True) -> Polyhedron:
    """Rebuild the solid; with ``verify`` every step delta, the target and the hash are checked."""
    P = build_base(recipe.base, recipe.base_args)
    rep = analyze(P) if verify else None
    for k, st in enumerate(recipe.steps):
        P = STEPS[st.name](P, st.site, st.params)
        if not verify:
            continue
        new = analyze(P)
        want = _expected(st.name, rep.cls)
        if new.cls != want:
            raise ClassNotAchieved(f"step {k} ({st.name}) gave class {new.cls}, expected {want}", new.cls)
        rep = new
    if verify:
        if recipe.target is not None and rep.cls != tuple(recipe.target):
            raise ClassNotAchieved(f"recipe ends in {rep.cls}, target {recipe.target}", rep.cls)
        if recipe.hash and polyhedron_hash(P) != recipe.hash:
            raise ReplayMismatch(f"hash {polyhedron_hash(P)} differs from recorded {recipe.hash}")
    return P


def _expected(name: str, cls):
    S, U = cls
    if name == "polar":
        return (U, S)
    if name == "move_vertex":
        return (S, U)
    _, _, dS, dU = DELTAS[name]
    return (S + dS, U + dU)


def load(path) -> Recipe:
    with open(path, encoding="utf-8") as fh:
        return Recipe.loads(fh.read())


def save(path, recipe: Recipe) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(recipe.dumps())
