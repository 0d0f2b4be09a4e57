"""Exact convex polyhedra: hull construction, validation, mass properties, polarity.

Coordinates are :class:`fractions.Fraction` throughout.  Predicates are
evaluated on integer images of the rational points (common-denominator
scaling), so every sign test is exact.  A polyhedron may also carry float
coordinates; only :func:`mass_properties` and the float classifier accept
those.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

from .errors import DegenerateInput, NoConvergence, NotConvex, ReferenceOutside

Vec3 = tuple


# ---------------------------------------------------------------- scalars

def to_scalar(x) -> Fraction:
    """Coerce ``x`` to an exact rational.

    Strings accept both decimal (``"3.2"``) and fraction (``"16/5"``)
    literals; floats go through their shortest repr, so ``3.2`` becomes
    ``16/5`` rather than the binary expansion.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    return Fraction(str(x))


def to_vec(p) -> Vec3:
    return tuple(to_scalar(c) for c in p)


def is_exact(p) -> bool:
    return all(isinstance(c, (Fraction, int)) for c in p)


# ---------------------------------------------------------------- vectors

def add(a, b):
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def sub(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def scale(a, s):
    return (a[0] * s, a[1] * s, a[2] * s)


def dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross(a, b):
    return (a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0])


def norm2(a):
    return dot(a, a)


def integer_frame(points: Sequence[Vec3]) -> tuple[list[tuple[int, int, int]], int]:
    """Scale rational points by the lcm of their denominators.

    Returns the integer images and the scale factor.  All predicates used
    here are invariant under a common positive scaling.
    """
    den = 1
    for p in points:
        for c in p:
            if isinstance(c, Fraction):
                den = lcm(den, c.denominator)
    out = []
    for p in points:
        out.append(tuple(_scaled(c, den) for c in p))
    return out, den


def _scaled(c, den: int) -> int:
    if isinstance(c, Fraction):
        return c.numerator * (den // c.denominator)
    return int(c) * den


# ------------------------------------------------------------- polyhedron

@dataclass(frozen=True)
class Polyhedron:
    """Convex polyhedron as a vertex list plus outward (CCW) face cycles."""

    vertices: tuple
    faces: tuple
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(tuple(p) for p in self.vertices))
        object.__setattr__(self, "faces", tuple(tuple(int(i) for i in f) for f in self.faces))

    @property
    def f(self) -> int:
        return len(self.faces)

    @property
    def v(self) -> int:
        return len(self.vertices)

    @property
    def e(self) -> int:
        return len(self.edges)

    @property
    def n(self) -> int:
        return self.f + self.v + self.e

    @cached_property
    def edges(self) -> tuple:
        es = set()
        for face in self.faces:
            for a, b in zip(face, face[1:] + face[:1]):
                es.add((a, b) if a < b else (b, a))
        return tuple(sorted(es))

    @cached_property
    def edge_faces(self) -> dict:
        """Map each edge ``(i, j)`` (i < j) to its two incident face indices.

        The first face traverses the edge as ``i -> j``.
        """
        fwd, bwd = {}, {}
        for k, face in enumerate(self.faces):
            for a, b in zip(face, face[1:] + face[:1]):
                if a < b:
                    fwd[(a, b)] = k
                else:
                    bwd[(b, a)] = k
        return {e: (fwd.get(e), bwd.get(e)) for e in self.edges}

    @cached_property
    def vertex_faces(self) -> tuple:
        inc = [[] for _ in self.vertices]
        for k, face in enumerate(self.faces):
            for i in face:
                inc[i].append(k)
        return tuple(tuple(x) for x in inc)

    def degree(self, i: int) -> int:
        return len(self.vertex_faces[i])

    def neighbours(self, i: int) -> list[int]:
        out = []
        for a, b in self.edges:
            if a == i:
                out.append(b)
            elif b == i:
                out.append(a)
        return out

    def face_normal(self, k: int):
        """Outward normal (not normalised) from three consecutive vertices."""
        face = self.faces[k]
        p0, p1, p2 = (self.vertices[i] for i in face[:3])
        return cross(sub(p1, p0), sub(p2, p1))

    def face_plane(self, k: int):
        n = self.face_normal(k)
        return n, dot(n, self.vertices[self.faces[k][0]])

    def face_centroid(self, k: int):
        """Vertex mean of face ``k``."""
        pts = [self.vertices[i] for i in self.faces[k]]
        m = len(pts)
        return tuple(sum(p[j] for p in pts) / m for j in range(3))

    def is_exact(self) -> bool:
        return all(is_exact(p) for p in self.vertices)

    def as_float(self) -> np.ndarray:
        return np.array([[float(c) for c in p] for p in self.vertices])

    def translated(self, t) -> "Polyhedron":
        return Polyhedron(tuple(add(p, t) for p in self.vertices), self.faces, self.name)

    def bbox_extent(self):
        """Largest coordinate range; a rational stand-in for the diameter."""
        return max(max(p[j] for p in self.vertices) - min(p[j] for p in self.vertices)
                   for j in range(3))

    def diameter(self) -> float:
        X = self.as_float()
        d = X[:, None, :] - X[None, :, :]
        return float(np.sqrt((d ** 2).sum(-1)).max())

    def contains_strictly(self, o) -> bool:
        for k in range(self.f):
            n, d = self.face_plane(k)
            if not dot(n, o) < d:
                return False
        return True


# ------------------------------------------------------------------- hull

def _orient(a, b, c, d) -> int:
    """Sign of det[b-a, c-a, d-a] on integer points."""
    u = (b[0] - a[0], b[1] - a[1], b[2] - a[2])
    v = (c[0] - a[0], c[1] - a[1], c[2] - a[2])
    w = (d[0] - a[0], d[1] - a[1], d[2] - a[2])
    det = (u[0] * (v[1] * w[2] - v[2] * w[1])
           - u[1] * (v[0] * w[2] - v[2] * w[0])
           + u[2] * (v[0] * w[1] - v[1] * w[0]))
    return (det > 0) - (det < 0)


def _hull2d_strict(idx, pts2):
    """Strict monotone-chain hull, CCW, collinear points dropped."""
    order = sorted(idx, key=lambda i: pts2[i])

    def turn(o, a, b):
        return ((pts2[a][0] - pts2[o][0]) * (pts2[b][1] - pts2[o][1])
                - (pts2[a][1] - pts2[o][1]) * (pts2[b][0] - pts2[o][0]))

    lower, upper = [], []
    for i in order:
        while len(lower) >= 2 and turn(lower[-2], lower[-1], i) <= 0:
            lower.pop()
        lower.append(i)
    for i in reversed(order):
        while len(upper) >= 2 and turn(upper[-2], upper[-1], i) <= 0:
            upper.pop()
        upper.append(i)
    return lower[:-1] + upper[:-1]


_DROP = {0: (1, 2), 1: (2, 0), 2: (0, 1)}


def hull_from_points(points: Iterable, name: str = "") -> Polyhedron:
    """Exact convex hull with coplanar facets merged.

    Output is canonical: vertices sorted lexicographically, every face cycle
    rotated to start at its smallest index, faces sorted.
    """
    pts = sorted(set(to_vec(p) for p in points))
    if len(pts) < 4:
        raise DegenerateInput(f"need at least 4 distinct points, got {len(pts)}")
    ip, _ = integer_frame(pts)
    n = len(ip)

    i0 = 0
    i1 = 1
    i2 = next((k for k in range(2, n)
               if any(cross(sub(ip[i1], ip[i0]), sub(ip[k], ip[i0])))), None)
    if i2 is None:
        raise DegenerateInput("all points are collinear")
    i3 = next((k for k in range(2, n) if k != i2 and _orient(ip[i0], ip[i1], ip[i2], ip[k]) != 0), None)
    if i3 is None:
        raise DegenerateInput("all points are coplanar")

    faces = {}
    counter = 0

    def add_face(a, b, c):
        nonlocal counter
        nrm = cross(sub(ip[b], ip[a]), sub(ip[c], ip[a]))
        faces[counter] = (a, b, c, nrm, dot(nrm, ip[a]))
        counter += 1

    simplex = (i0, i1, i2, i3)
    for a, b, c, opp in ((i0, i1, i2, i3), (i0, i1, i3, i2), (i0, i2, i3, i1), (i1, i2, i3, i0)):
        if _orient(ip[a], ip[b], ip[c], ip[opp]) > 0:
            add_face(a, c, b)
        else:
            add_face(a, b, c)

    for k in range(n):
        if k in simplex:
            continue
        p = ip[k]
        visible = [fid for fid, fc in faces.items() if dot(fc[3], p) > fc[4]]
        if not visible:
            continue
        horizon = set()
        for fid in visible:
            a, b, c = faces[fid][:3]
            for e in ((a, b), (b, c), (c, a)):
                r = (e[1], e[0])
                if r in horizon:
                    horizon.remove(r)
                else:
                    horizon.add(e)
        for fid in visible:
            del faces[fid]
        for a, b in sorted(horizon):
            add_face(a, b, k)

    planes = {}
    for a, b, c, nrm, d in faces.values():
        g = gcd(gcd(gcd(abs(nrm[0]), abs(nrm[1])), abs(nrm[2])), abs(d))
        key = (nrm[0] // g, nrm[1] // g, nrm[2] // g, d // g)
        planes.setdefault(key, None)

    cycles = []
    for key in planes:
        nrm, d = key[:3], key[3]
        on = [k for k in range(n) if dot(nrm, ip[k]) == d]
        axis = max(range(3), key=lambda j: abs(nrm[j]))
        u, w = _DROP[axis]
        pts2 = {k: (ip[k][u], ip[k][w]) for k in on}
        cyc = _hull2d_strict(on, pts2)
        if nrm[axis] < 0:
            cyc = cyc[::-1]
        cycles.append(cyc)

    used = sorted({i for cyc in cycles for i in cyc})
    remap = {old: new for new, old in enumerate(used)}
    verts = tuple(pts[i] for i in used)
    out_faces = []
    for cyc in cycles:
        cyc = [remap[i] for i in cyc]
        m = cyc.index(min(cyc))
        out_faces.append(tuple(cyc[m:] + cyc[:m]))
    out_faces.sort()
    return Polyhedron(verts, tuple(out_faces), name)


def canonical(P: Polyhedron) -> Polyhedron:
    """Re-derive ``P`` through the hull so vertex/face order is canonical."""
    return hull_from_points(P.vertices, P.name)


def clip(P: Polyhedron, normal, offset, name: str = "") -> Polyhedron:
    """Intersect ``P`` with the half-space ``normal . x <= offset``."""
    normal = to_vec(normal)
    offset = to_scalar(offset)
    side = [dot(normal, p) - offset for p in P.vertices]
    pts = [p for p, s in zip(P.vertices, side) if s <= 0]
    for a, b in P.edges:
        sa, sb = side[a], side[b]
        if (sa < 0 < sb) or (sb < 0 < sa):
            t = sa / (sa - sb)
            pa, pb = P.vertices[a], P.vertices[b]
            pts.append(add(pa, scale(sub(pb, pa), t)))
    return hull_from_points(pts, name or P.name)


def with_point(P: Polyhedron, q, name: str = "") -> Polyhedron:
    return hull_from_points(list(P.vertices) + [to_vec(q)], name or P.name)


# ------------------------------------------------------------- validation

@dataclass
class Issue:
    kind: str
    indices: tuple
    message: str


@dataclass
class ValidationReport:
    issues: list
    f: int
    v: int
    e: int

    @property
    def ok(self) -> bool:
        return not self.issues

    @property
    def euler(self) -> int:
        return self.f + self.v - self.e

    def kinds(self) -> set:
        return {i.kind for i in self.issues}

    def __str__(self):
        if self.ok:
            return f"valid: f={self.f} v={self.v} e={self.e} (f+v-e={self.euler})"
        return "\n".join(f"{i.kind} {i.indices}: {i.message}" for i in self.issues)


def validate(P: Polyhedron) -> ValidationReport:
    """Check every structural invariant exactly; never raises."""
    issues = []
    V = P.vertices
    nv = len(V)

    seen = {}
    for i, p in enumerate(V):
        if p in seen:
            issues.append(Issue("duplicate_vertex", (seen[p], i), "vertices coincide"))
        seen[p] = i

    good_faces = []
    for k, face in enumerate(P.faces):
        if len(face) < 3 or len(set(face)) != len(face):
            issues.append(Issue("face_size", (k,), "face needs >= 3 distinct vertices"))
            continue
        if any(i < 0 or i >= nv for i in face):
            issues.append(Issue("index", (k,), "vertex index out of range"))
            continue
        good_faces.append(k)

    exact = P.is_exact()
    if not exact:
        issues.append(Issue("inexact", (), "validation requires rational coordinates"))
        return ValidationReport(issues, P.f, P.v, P.e)

    normals = {}
    for k in good_faces:
        face = P.faces[k]
        pts = [V[i] for i in face]
        nrm = (0, 0, 0)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            nrm = add(nrm, cross(a, b))
        if nrm == (0, 0, 0):
            issues.append(Issue("zero_area", (k,), "face has zero area"))
            continue
        normals[k] = nrm
        off = [i for i in face if dot(nrm, sub(V[i], pts[0])) != 0]
        if off:
            issues.append(Issue("nonplanar", (k,) + tuple(off), "face vertices not coplanar"))
            continue
        m = len(face)
        for t in range(m):
            a, b, c = V[face[t - 1]], V[face[t]], V[face[(t + 1) % m]]
            s = dot(cross(sub(b, a), sub(c, b)), nrm)
            if s == 0:
                issues.append(Issue("collinear", (k, face[t]),
                                    "vertex lies in the relative interior of a face edge"))
            elif s < 0:
                issues.append(Issue("reflex", (k, face[t]), "face polygon not convex"))

    directed = {}
    for k in good_faces:
        face = P.faces[k]
        for a, b in zip(face, face[1:] + face[:1]):
            if (a, b) in directed:
                issues.append(Issue("orientation", (directed[(a, b)], k),
                                    f"directed edge {a}->{b} used twice"))
            directed[(a, b)] = k
    for (a, b), k in directed.items():
        if (b, a) not in directed:
            issues.append(Issue("open_edge", (k, a, b), "edge has a single incident face"))

    for k, nrm in normals.items():
        face = P.faces[k]
        d = dot(nrm, V[face[0]])
        members = set(face)
        pos = [i for i in range(nv) if i not in members and dot(nrm, V[i]) > d]
        zero = [i for i in range(nv) if i not in members and dot(nrm, V[i]) == d]
        others = nv - len(members)
        if pos and len(pos) == others:
            issues.append(Issue("orientation", (k,), "face cycle is clockwise seen from outside"))
        elif pos:
            issues.append(Issue("convexity", (k,) + tuple(pos), "vertices beyond face plane"))
        if zero:
            issues.append(Issue("coplanar", (k,) + tuple(zero),
                                "vertex on a face plane but not on the face"))

    inc = [0] * nv
    for k in good_faces:
        for i in P.faces[k]:
            inc[i] += 1
    for i, c in enumerate(inc):
        if c < 3:
            issues.append(Issue("vertex_degree", (i,), f"vertex in {c} faces"))

    if P.f + P.v - P.e != 2:
        issues.append(Issue("euler", (P.f, P.v, P.e), f"f+v-e = {P.f + P.v - P.e}"))
    return ValidationReport(issues, P.f, P.v, P.e)


def require_valid(P: Polyhedron) -> None:
    rep = validate(P)
    if not rep.ok:
        raise NotConvex(str(rep), rep)


# -------------------------------------------------------- mass properties

@dataclass(frozen=True)
class MassProperties:
    volume: object
    centroid: Vec3


def mass_properties(P: Polyhedron, apex=None, check: bool = False) -> MassProperties:
    """Volume and centroid of the homogeneous solid.

    The solid is decomposed into tetrahedra joining ``apex`` (default: the
    first vertex) to a fan triangulation of every face.  With rational
    coordinates the result is exact and independent of the apex.
    """
    if check:
        require_valid(P)
    if not P.is_exact() or (apex is not None and not is_exact(apex)):
        return _mass_float(P, apex)
    a = to_vec(apex) if apex is not None else P.vertices[0]
    rel = [sub(p, a) for p in P.vertices]
    ip, den = integer_frame(rel)
    vol6 = 0
    mom = [0, 0, 0]
    for face in P.faces:
        p0 = ip[face[0]]
        for i in range(1, len(face) - 1):
            p1, p2 = ip[face[i]], ip[face[i + 1]]
            d = dot(p0, cross(p1, p2))
            if d:
                vol6 += d
                mom[0] += d * (p0[0] + p1[0] + p2[0])
                mom[1] += d * (p0[1] + p1[1] + p2[1])
                mom[2] += d * (p0[2] + p1[2] + p2[2])
    if vol6 <= 0:
        raise NotConvex("non-positive volume")
    volume = Fraction(vol6, 6 * den ** 3)
    centroid = tuple(a[j] + Fraction(mom[j], 4 * vol6 * den) for j in range(3))
    return MassProperties(volume, centroid)


def _mass_float(P: Polyhedron, apex=None) -> MassProperties:
    X = P.as_float()
    a = X[0] if apex is None else np.asarray(apex, dtype=float)
    tris = [(f[0], f[i], f[i + 1]) for f in P.faces for i in range(1, len(f) - 1)]
    T = np.array(tris)
    p0, p1, p2 = X[T[:, 0]] - a, X[T[:, 1]] - a, X[T[:, 2]] - a
    d = np.einsum("ij,ij->i", p0, np.cross(p1, p2))
    vol6 = d.sum()
    c = a + (d[:, None] * (p0 + p1 + p2)).sum(0) / (4 * vol6)
    return MassProperties(vol6 / 6.0, tuple(float(x) for x in c))


def centroid(P: Polyhedron):
    return mass_properties(P).centroid


# ----------------------------------------------------------------- polarity

def polar_dual(P: Polyhedron, o=(0, 0, 0)) -> Polyhedron:
    """Polar body of ``P`` with respect to the interior point ``o``.

    The pole of the face plane ``n . x = d`` is ``o + n / (d - n . o)``; the
    result is placed back around ``o``.
    """
    o = to_vec(o)
    poles = []
    for k in range(P.f):
        n, d = P.face_plane(k)
        h = d - dot(n, o)
        if h <= 0:
            raise ReferenceOutside(f"reference point not strictly inside face {k}")
        poles.append(add(o, scale(n, Fraction(1) / h)))
    return hull_from_points(poles, name=(P.name + "°") if P.name else "")


def pole_of_face(P: Polyhedron, k: int, o) -> Vec3:
    n, d = P.face_plane(k)
    return add(o, scale(n, Fraction(1) / (d - dot(n, o))))


@dataclass
class PolarMap:
    """Site correspondence between ``P`` and its polar ``D``."""
    face_to_vertex: list
    vertex_to_face: list
    edge_to_edge: dict


def polar_correspondence(P: Polyhedron, D: Polyhedron, o=(0, 0, 0)) -> PolarMap:
    o = to_vec(o)
    index = {p: i for i, p in enumerate(D.vertices)}
    f2v = [index[pole_of_face(P, k, o)] for k in range(P.f)]
    v2f = []
    for i in range(P.v):
        poles = {f2v[k] for k in P.vertex_faces[i]}
        match = [k for k, face in enumerate(D.faces) if set(face) == poles]
        v2f.append(match[0])
    e2e = {}
    for e, (fa, fb) in P.edge_faces.items():
        a, b = f2v[fa], f2v[fb]
        e2e[e] = (a, b) if a < b else (b, a)
    return PolarMap(f2v, v2f, e2e)


def santalo_point(P: Polyhedron, tol: float = 1e-13, max_iter: int = 50):
    """Float point ``s`` whose polar body ``P^s`` has its centre of mass at ``s``.

    Newton iteration on ``x -> c(P^x) - x`` started at the centre of mass;
    the polar's combinatorics do not depend on ``x``, only the poles move.
    """
    c = mass_properties(P).centroid
    D0 = polar_dual(P, c)
    f2v = polar_correspondence(P, D0, c).face_to_vertex
    planes = [P.face_plane(k) for k in range(P.f)]
    N = np.array([[float(t) for t in n] for n, _ in planes])
    d = np.array([float(dd) for _, dd in planes])
    order = np.argsort(f2v)

    def residual(x):
        poles = x + N / (d - N @ x)[:, None]
        Y = poles[order]
        D = Polyhedron(tuple(map(tuple, Y)), D0.faces)
        return np.array(_mass_float(D).centroid) - x

    x = np.array([float(t) for t in c])
    scale_ = float(P.bbox_extent())
    for _ in range(max_iter):
        r = residual(x)
        if np.linalg.norm(r) <= tol * scale_:
            return tuple(float(t) for t in x)
        h = 1e-7 * scale_
        J = np.empty((3, 3))
        for k in range(3):
            dx = np.zeros(3)
            dx[k] = h
            J[:, k] = (residual(x + dx) - residual(x - dx)) / (2 * h)
        step = np.linalg.solve(J, -r)
        lam = 1.0
        while lam > 1e-6:
            xn = x + lam * step
            if np.all(d - N @ xn > 0) and np.linalg.norm(residual(xn)) < np.linalg.norm(r):
                break
            lam /= 2
        x = xn
    raise NoConvergence("Santalo point iteration did not converge")


def congruent(P: Polyhedron, Q: Polyhedron) -> bool:
    """Same vertex set and same face cycles (identity map, not isometry search)."""
    if set(P.vertices) != set(Q.vertices) or P.f != Q.f:
        return False

    def cycles(X):
        out = set()
        for face in X.faces:
            pts = [X.vertices[i] for i in face]
            m = pts.index(min(pts))
            out.add(tuple(pts[m:] + pts[:m]))
        return out
    return cycles(P) == cycles(Q)


# ------------------------------------------------------------------ solids

def cube(lo=0, hi=1) -> Polyhedron:
    lo, hi = to_scalar(lo), to_scalar(hi)
    return hull_from_points([(x, y, z) for x in (lo, hi) for y in (lo, hi) for z in (lo, hi)], "cube")


def regular_tetrahedron() -> Polyhedron:
    return hull_from_points([(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)], "regular tetrahedron")


def octahedron(r=1) -> Polyhedron:
    r = to_scalar(r)
    pts = []
    for j in range(3):
        for s in (r, -r):
            p = [0, 0, 0]
            p[j] = s
            pts.append(tuple(p))
    return hull_from_points(pts, "octahedron")
