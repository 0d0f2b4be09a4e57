"""Fixed-coordinate solids: small tetrahedra and pentahedra, regular pyramids."""
from __future__ import annotations

import math
from fractions import Fraction

from ..equilibria import analyze
from ..errors import ClassNotAchieved, UnknownCatalogEntry
from ..geometry import Polyhedron, hull_from_points, regular_tetrahedron, to_vec

# Rational grid used for irrational coordinates (relative error < 1e-6).
GRID = 2 ** 20


def snap(x: float, den: int = GRID) -> Fraction:
    return Fraction(round(x * den), den)


# Tetrahedra ABCD with A=(0,0,0), B=(1,0,0), C=(Cx,Cy,0), D=(Dx,Dy,Dz).
# Flags list the sites carrying an equilibrium, in the order
# faces ABC ABD ACD BCD | vertices A B C D | edges AB AC AD BC BD CD.
TETRAHEDRA = {
    (2, 2): (("3.2", "1.9"), ("-2.2", "0.3", "1.8"), "0011", "0011", "100001"),
    (2, 3): (("1.9", "5.3"), ("1.9", "-0.9", "5.2"), "0011", "1011", "011001"),
    (2, 4): (("-0.9", "5.3"), ("1.9", "0.9", "5.2"), "0011", "1111", "110011"),
    (3, 2): (("1.0", "2.7"), ("-0.9", "-4.1", "3.4"), "0111", "0011", "001011"),
    (3, 3): (("1.0", "5.7"), ("0.5", "-0.5", "1.3"), "1011", "1011", "011101"),
    (3, 4): (("0.5", "2.8"), ("0.5", "-0.7", "1.2"), "1011", "1111", "011111"),
    (4, 2): (("3.2", "3.8"), ("-2.2", "-2.9", "2.5"), "1111", "0011", "110011"),
    (4, 3): (("1.9", "5.3"), ("1.9", "5.0", "1.8"), "1111", "1011", "011111"),
}

FACE_LABELS = ("ABC", "ABD", "ACD", "BCD")
VERTEX_LABELS = ("A", "B", "C", "D")
EDGE_LABELS = ("AB", "AC", "AD", "BC", "BD", "CD")

# Pentahedra ABCDE with A=(0,0,0), B=(0,1,0), C=(Cx,Cy,0), D=(Dx,Dy,0),
# E=(Ex,Ey,Ez).
PENTAHEDRA = {
    (2, 5): ("1.0", "1.7", "0.5", "-0.3", "2.1", "1.2", "1.2"),
    (3, 5): ("1.0", "1.7", "3.8", "-2.2", "1.6", "0.9", "0.9"),
    (4, 5): ("2.5", "1.4", "3.8", "-2.2", "2.0", "1.2", "1.2"),
    (5, 2): ("1.0", "1.7", "0.9", "0.5", "-0.6", "-1.1", "-1.1"),
    (5, 3): ("1.0", "1.7", "0.9", "0.5", "1.5", "2.6", "2.6"),
    (5, 4): ("1.0", "1.7", "1.3", "0.8", "1.5", "2.6", "2.6"),
}


def tetrahedron_points(S: int, U: int) -> dict:
    (cx, cy), (dx, dy, dz), *_ = TETRAHEDRA[(S, U)]
    return {"A": (0, 0, 0), "B": (1, 0, 0), "C": (cx, cy, 0), "D": (dx, dy, dz)}


def pentahedron_points(S: int, U: int) -> dict:
    cx, cy, dx, dy, ex, ey, ez = PENTAHEDRA[(S, U)]
    return {"A": (0, 0, 0), "B": (0, 1, 0), "C": (cx, cy, 0), "D": (dx, dy, 0), "E": (ex, ey, ez)}


def labelled(points: dict, name: str = ""):
    """Hull of labelled points, plus the label of each hull vertex."""
    P = hull_from_points(points.values(), name)
    lab = {to_vec(p): k for k, p in points.items()}
    return P, [lab[p] for p in P.vertices]


def site_flags(P: Polyhedron, labels, rep=None) -> tuple[str, str, str]:
    """Equilibrium flags of a labelled tetrahedron in the table's column order."""
    rep = rep or analyze(P)
    faces = {"".join(sorted(labels[i] for i in f)): k for k, f in enumerate(P.faces)}
    fs = "".join(_flag(rep.faces[faces[x]]) for x in FACE_LABELS)
    verts = {labels[i]: rep.vertices[i] for i in range(P.v)}
    vs = "".join(_flag(verts[x]) for x in VERTEX_LABELS)
    edges = {"".join(sorted(labels[i] + labels[j])): k
             for (i, j), k in zip(rep.edges, rep.edge_kinds)}
    es = "".join(_flag(edges[x]) for x in EDGE_LABELS)
    return fs, vs, es


def _flag(kind) -> str:
    return {"none": "0", "degenerate": "D"}.get(kind.value, "1")


def catalog(S: int, U: int) -> Polyhedron:
    """Fixed small witness for a class with ``S, U <= 5``."""
    key = (S, U)
    if key in TETRAHEDRA:
        return labelled(tetrahedron_points(S, U), f"tetrahedron{key}")[0]
    if key in PENTAHEDRA:
        return labelled(pentahedron_points(S, U), f"pentahedron{key}")[0]
    if key == (4, 4):
        return regular_tetrahedron()
    if key == (5, 5):
        return pyramid(5, 1)
    raise UnknownCatalogEntry(f"no catalog solid for class {key}")


def catalog_classes() -> list:
    return sorted(set(TETRAHEDRA) | set(PENTAHEDRA) | {(4, 4), (5, 5)})


def regular_polygon(k: int, inradius=1, den: int = GRID) -> list:
    """Rational approximation of the regular ``k``-gon with the given inradius."""
    R = float(inradius) / math.cos(math.pi / k)
    return [(snap(R * math.cos(2 * math.pi * i / k + math.pi / 2), den),
             snap(R * math.sin(2 * math.pi * i / k + math.pi / 2), den)) for i in range(k)]


def pyramid_at(S: int, h) -> Polyhedron:
    base = [(x, y, 0) for x, y in regular_polygon(S - 1)]
    return hull_from_points(base + [(0, 0, Fraction(h))], f"pyramid({S})")


def pyramid(S: int, h=1, budget: int = 16) -> Polyhedron:
    """Minimal pyramid in class ``(S, S)`` over a regular ``(S-1)``-gon.

    ``h`` is tried first, then halved and doubled alternately until the
    exact analysis confirms the class with zero complexity.
    """
    if S < 4:
        raise ValueError("pyramid needs S >= 4")
    h = Fraction(h)
    achieved = None
    for k in range(budget):
        e = (k + 1) // 2
        hk = h / 2 ** e if k % 2 else h * 2 ** e
        P = pyramid_at(S, hk)
        rep = analyze(P)
        achieved = rep.cls
        if rep.cls == (S, S) and P.n == rep.N:
            return P
    raise ClassNotAchieved(f"pyramid({S}) did not verify", achieved)
