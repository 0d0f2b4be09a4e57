"""Serialized analysis reports and grid tables.

The JSON layout is described in ``docs/schema.md``; bump ``SCHEMA_VERSION``
whenever a field changes meaning.
"""
from __future__ import annotations

import csv
import io
from typing import Optional

from .complexity import ClassBounds
from .equilibria import EquilibriumReport, check_balance_identities
from .geometry import Polyhedron
from .off import content_hash, format_scalar, polyhedron_hash

SCHEMA_VERSION = 1
GRID_COLUMNS = ("S", "U", "pair", "lower", "upper", "status", "notes")


def _scalar(x) -> str:
    return format_scalar(x) if not isinstance(x, float) else repr(x)


def analysis_report(P: Polyhedron, rep: EquilibriumReport, source: Optional[str] = None) -> dict:
    """JSON-ready dict; ``source`` (the input file text) is hashed when given."""
    degenerate = rep.degenerate
    out = {
        "schema": "equilib.analysis",
        "version": SCHEMA_VERSION,
        "input_hash": content_hash(source) if source is not None else polyhedron_hash(P),
        "geometry_hash": polyhedron_hash(P),
        "name": P.name,
        "exact": rep.exact,
        "reference": [_scalar(x) for x in rep.reference],
        "combinatorial": {"f": P.f, "v": P.v, "e": P.e, "n": P.n},
        "equilibrium": None if degenerate else {"S": rep.S, "U": rep.U, "H": rep.H, "N": rep.N},
        "complexity": None if degenerate else P.n - rep.N,
        "degenerate": degenerate,
        "degenerate_sites": [[k, list(i) if isinstance(i, tuple) else i] for k, i in rep.degenerate_sites()],
        "sites": {
            "faces": [str(k) for k in rep.faces],
            "edges": [{"edge": list(e), "kind": str(k)} for e, k in zip(rep.edges, rep.edge_kinds)],
            "vertices": [str(k) for k in rep.vertices],
        },
    }
    if not degenerate:
        bal = check_balance_identities(P, rep)
        out["balance"] = {"poincare": bal.poincare, "euler": bal.euler, "complexity": bal.complexity}
    return out


def check_report(data: dict) -> list[str]:
    """Consistency problems in a deserialized report (empty list when fine)."""
    problems = []
    if data.get("version") != SCHEMA_VERSION:
        problems.append(f"unsupported version {data.get('version')!r}")
    comb = data["combinatorial"]
    if comb["f"] + comb["v"] - comb["e"] != 2:
        problems.append("f + v - e != 2")
    if comb["n"] != comb["f"] + comb["v"] + comb["e"]:
        problems.append("n != f + v + e")
    eq = data.get("equilibrium")
    if data["degenerate"]:
        if eq is not None or data["complexity"] is not None:
            problems.append("degenerate report carries counts")
        return problems
    if eq["S"] + eq["U"] - eq["H"] != 2:
        problems.append("S + U - H != 2")
    if eq["N"] != eq["S"] + eq["U"] + eq["H"]:
        problems.append("N != S + U + H")
    if data["complexity"] != comb["n"] - eq["N"]:
        problems.append("C != n - N")
    sites = data["sites"]
    counted = (sites["faces"].count("stable"), sites["vertices"].count("unstable"),
               sum(1 for e in sites["edges"] if e["kind"] == "saddle"))
    if counted != (eq["S"], eq["U"], eq["H"]):
        problems.append("site lists disagree with counts")
    return problems


def grid_rows(cells: list[ClassBounds]) -> list[dict]:
    return [{"S": c.S, "U": c.U, "pair": int(c.pair), "lower": c.lower,
             "upper": "" if c.upper is None else c.upper, "status": str(c.status),
             "notes": "; ".join(c.notes)} for c in cells]


def grid_csv(cells: list[ClassBounds]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=GRID_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(grid_rows(cells))
    return buf.getvalue()
