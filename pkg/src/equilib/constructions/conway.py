"""Monostatic solids built on a discretised spiral polygon.

The polygon is made of ``2m`` similar right triangles around the origin,
each with angle ``pi/m`` there.  Walking outward on the right half,
``A_k = (r0 / cos^k b) (sin kb, -cos kb)`` for ``k = 1 .. m`` (so ``A_m``
lies on the y axis at the top); the left half mirrors ``A_1 .. A_{m-1}``.
The midpoint ``A_0 = (0, -r0)`` is collinear with its neighbours and drops
out, leaving a ``(2m-1)``-gon whose bottom edge lies on ``y = -r0``.

The mono-stable solid is a prism over this polygon whose thickness grows
linearly downward, ``h(y) = a + b (y_top - y)``; the end faces are the
planes ``z = +-(h(y)/2 + tau x)`` (``tau = 0`` is the symmetric solid,
``tau != 0`` rotates both ends so the short bottom edges stop being
parallel).  Heavy bottom, small ``r = c_y + r0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

from ..equilibria import Kind, analyze
from ..errors import ClassNotAchieved, NotMonostatic, ParamsOutOfWindow
from ..geometry import Polyhedron, hull_from_points, mass_properties
from .catalog import GRID, snap

MIN_M = 9


@dataclass(frozen=True)
class ConwayParams:
    m: int = 9
    r0: Fraction = Fraction(1)
    a: Fraction = Fraction(1)
    b: Fraction = Fraction(64)
    tau: Fraction = Fraction(0)
    apex: tuple = (Fraction(0), Fraction(-19, 20), Fraction(1, 20))
    den: int = GRID

    def __post_init__(self):
        for k in ("r0", "a", "b", "tau"):
            object.__setattr__(self, k, Fraction(getattr(self, k)))
        object.__setattr__(self, "apex", tuple(Fraction(x) for x in self.apex))


def conway_polygon(m: int, r0=1, den: int = GRID) -> list:
    """Counter-clockwise rational vertices; exact mirror symmetry, bottom at ``y = -r0``."""
    if m < 2:
        raise ParamsOutOfWindow("m must be at least 2")
    r0 = Fraction(r0)
    beta = math.pi / m
    right = []
    for k in range(1, m + 1):
        rad = float(r0) / math.cos(beta) ** k
        right.append([snap(rad * math.sin(k * beta), den), snap(-rad * math.cos(k * beta), den)])
    right[0][1] = -r0
    right[-1][0] = Fraction(0)
    left = [(-x, y) for x, y in right[:-1]]
    return [tuple(p) for p in right] + left[::-1]


def _polygon_moments(poly):
    """Exact ``(area, int y dA, int y^2 dA)`` of a simple CCW polygon."""
    A = My = Myy = Fraction(0)
    n = len(poly)
    for i in range(n):
        x0, y0 = poly[i]
        x1, y1 = poly[(i + 1) % n]
        cr = x0 * y1 - x1 * y0
        A += cr
        My += cr * (y0 + y1)
        Myy += cr * (y0 * y0 + y0 * y1 + y1 * y1)
    return A / 2, My / 6, Myy / 12


def centroid_height(m: int, a, b, r0=1, den: int = GRID) -> Fraction:
    """Exact ``r = c_y + r0`` of the untwisted prism (twisting keeps ``c_y``)."""
    poly = conway_polygon(m, r0, den)
    yt = poly[m - 1][1]
    A, My, Myy = _polygon_moments(poly)
    a, b = Fraction(a), Fraction(b)
    # thickness h(y) = (a + b yt) - b y
    k0 = a + b * yt
    w = k0 * A - b * My
    wy = k0 * My - b * Myy
    return wy / w + Fraction(r0)


def radii(m: int, r0=1, den: int = GRID) -> dict:
    """``r1`` (pure wedge, a = 0), ``r2`` (flat plate, b = 0) and ``r0``."""
    return {"r0": Fraction(r0), "r1": centroid_height(m, 0, 1, r0, den),
            "r2": centroid_height(m, 1, 0, r0, den)}


def conway_prism(p: ConwayParams) -> Polyhedron:
    poly = conway_polygon(p.m, p.r0, p.den)
    yt = poly[p.m - 1][1]
    pts = []
    for x, y in poly:
        h = p.a + p.b * (yt - y)
        pts.append((x, y, h / 2 + p.tau * x))
        pts.append((x, y, -h / 2 - p.tau * x))
    name = "conway" if p.tau == 0 else "conway twisted"
    return hull_from_points(pts, name)


def conway_solid(params: ConwayParams = ConwayParams(), verify: bool = True) -> Polyhedron:
    """Mono-stable prism in ``(1, 4)``, combinatorial class ``(19, 34)`` for ``m = 9``."""
    p = params
    if p.m < MIN_M:
        raise ParamsOutOfWindow(f"m = {p.m} is below the monostable regime (m >= {MIN_M})")
    if p.a < 0 or p.b < 0 or p.r0 <= 0:
        raise ParamsOutOfWindow("a, b must be non-negative and r0 positive")
    P = conway_prism(p)
    if verify:
        rep = analyze(P)
        if rep.cls != (1, 4):
            extra = [f"face {k}" for k, x in enumerate(rep.faces) if x != Kind.NONE]
            raise NotMonostatic(f"class {rep.cls} instead of (1, 4); faces with equilibria: {extra}",
                                rep.cls)
        r = mass_properties(P).centroid[1] + p.r0
        if not r < p.r0:
            raise NotMonostatic(f"centre of mass too high: r = {float(r):.6f} >= r0", rep.cls)
    return P


def standing_height(P: Polyhedron, r0=1) -> Fraction:
    """``r`` for a solid standing on ``y = -r0``: height of the centre of mass."""
    return mass_properties(P).centroid[1] + Fraction(r0)


def twisted_conway(params: ConwayParams = ConwayParams(), tau=Fraction(1, 256)) -> Polyhedron:
    """Conway solid with both end faces rotated; the short bottom edges converge at negative x."""
    P = conway_prism(replace(params, tau=Fraction(tau)))
    rep = analyze(P)
    if rep.cls != (1, 4):
        raise NotMonostatic(f"twist {tau} changed the class to {rep.cls}", rep.cls)
    return P


# ------------------------------------------------------ mono-unstable pyramids

ASYM_OFFSET = Fraction(1, 1000)


def pyramid_apex(params: ConwayParams, symmetric: bool = True) -> tuple:
    x, y, h = params.apex
    if not symmetric and x == 0:
        x = ASYM_OFFSET * params.r0
    return (x, y, h)


def mono_unstable_pyramid(params: ConwayParams = ConwayParams(), symmetric: bool = True,
                          apex=None) -> Polyhedron:
    """Flat pyramid over the spiral polygon with its apex near the bottom edge.

    Symmetric apex: class ``(3, 1)``; apex moved off the mirror plane:
    ``(2, 1)``.  Both sit in combinatorial class ``(18, 18)`` for ``m = 9``.
    """
    poly = conway_polygon(params.m, params.r0, params.den)
    q = tuple(Fraction(x) for x in apex) if apex is not None else pyramid_apex(params, symmetric)
    P = hull_from_points([(x, y, 0) for x, y in poly] + [q],
                         "mono-unstable pyramid" + ("" if symmetric else " (asymmetric)"))
    want = (3, 1) if symmetric else (2, 1)
    rep = analyze(P)
    if rep.cls != want:
        raise ClassNotAchieved(f"pyramid with apex {tuple(map(str, q))} is in class {rep.cls}, "
                               f"not {want}", rep.cls)
    return P


def polygon_centroid(params: ConwayParams) -> tuple:
    poly = conway_polygon(params.m, params.r0, params.den)
    A, My, _ = _polygon_moments(poly)
    # x moment vanishes by mirror symmetry
    return (Fraction(0), My / A)


def tilted_pyramid(params: ConwayParams = ConwayParams(), t=Fraction(1, 1024)) -> Polyhedron:
    """Symmetric pyramid with its bottom lateral face turned about the apex's vertical axis.

    The trace of that face on the base plane is rotated by the angle with
    ``tan(angle/2) = t`` around the apex foot; the new bottom corners are
    where the rotated trace meets the neighbouring polygon edges.  The
    stable point of the base and the bottom saddle leave the mirror line.
    """
    t = Fraction(t)
    cs, sn = (1 - t * t) / (1 + t * t), 2 * t / (1 + t * t)
    poly = conway_polygon(params.m, params.r0, params.den)
    ax, ay, ah = params.apex
    # polygon order: A_1 .. A_m, A'_{m-1} .. A'_1; bottom edge A'_1 -> A_1
    n = len(poly)
    r1, r2 = poly[0], poly[1]
    l1, l2 = poly[n - 1], poly[n - 2]
    # the trace y = -r0 rotated about (ax, ay)
    p0 = (Fraction(0) - ax, -params.r0 - ay)
    base = (ax + cs * p0[0] - sn * p0[1], ay + sn * p0[0] + cs * p0[1])
    direc = (cs, sn)

    def meet(p, q):
        ux, uy = q[0] - p[0], q[1] - p[1]
        den = direc[0] * uy - direc[1] * ux
        s = ((p[0] - base[0]) * uy - (p[1] - base[1]) * ux) / den
        return (base[0] + s * direc[0], base[1] + s * direc[1])

    new_r1 = meet(r1, r2)
    new_l1 = meet(l1, l2)
    pts = [new_r1] + poly[1:n - 1] + [new_l1]
    P = hull_from_points([(x, y, 0) for x, y in pts] + [params.apex], "tilted mono-unstable pyramid")
    rep = analyze(P)
    if rep.cls != (3, 1):
        raise ClassNotAchieved(f"tilt t={t} changed the class to {rep.cls}", rep.cls)
    return P
