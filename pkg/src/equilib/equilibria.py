"""Static equilibria of convex polyhedra with respect to a reference point.

A face carries a stable point when the foot of the perpendicular from the
reference point lies inside it, an edge carries a saddle when the foot on
its line lies inside the edge and the foot direction sits strictly between
the two adjacent outward normals, and a vertex is unstable when the plane
through it perpendicular to the reference direction touches the solid only
at that vertex.

The exact backend translates the reference point to the origin and scales
to integers, so every test is an integer sign.  The float backend mirrors
the same formulas with a relative tolerance and exists only for inputs with
irrational coordinates.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .errors import DegenerateEquilibria, NotMidscribed, ReferenceOutside
from .geometry import (Polyhedron, cross, dot, integer_frame, is_exact, mass_properties,
                       sub, to_vec)

FLOAT_TOL = 1e-9


class Kind(str, enum.Enum):
    STABLE = "stable"
    SADDLE = "saddle"
    UNSTABLE = "unstable"
    NONE = "none"
    DEGENERATE = "degenerate"

    def __str__(self):
        return self.value


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


class _Frame:
    """Vertex coordinates relative to the reference point, ready for sign tests."""

    def __init__(self, P: Polyhedron, c, exact: bool, tol: float = FLOAT_TOL):
        self.P = P
        self.exact = exact
        if exact:
            rel = [sub(p, c) for p in P.vertices]
            self.X, _ = integer_frame(rel)
            self.sign = _sgn
        else:
            cf = tuple(float(x) for x in c)
            self.X = [tuple(float(x) - y for x, y in zip(p, cf)) for p in P.vertices]
            L = max(math.sqrt(dot(p, p)) for p in self.X)
            self.L = L
            self.tol = tol
        self.planes = []
        for face in P.faces:
            a, b, cc = (self.X[i] for i in face[:3])
            n = cross(sub(b, a), sub(cc, b))
            if not exact:
                ln = math.sqrt(dot(n, n))
                n = tuple(x / ln for x in n)
            d = dot(n, a)
            self.planes.append((n, d))

    def fsign(self, x, power: int) -> int:
        """Float sign with a tolerance scaled to ``L**power``."""
        if abs(x) <= self.tol * self.L ** power:
            return 0
        return 1 if x > 0 else -1

    def check_interior(self):
        for k, (n, d) in enumerate(self.planes):
            s = _sgn(d) if self.exact else self.fsign(d, 1)
            if s <= 0:
                raise ReferenceOutside(f"reference point not strictly inside (face {k})")

    # -- faces
    def face(self, k: int) -> Kind:
        n, d = self.planes[k]
        face = self.P.faces[k]
        X = self.X
        if self.exact:
            nn = dot(n, n)
            s = (d * n[0], d * n[1], d * n[2])
            signs = []
            for a, b in zip(face, face[1:] + face[:1]):
                pa, pb = X[a], X[b]
                rel = (s[0] - nn * pa[0], s[1] - nn * pa[1], s[2] - nn * pa[2])
                signs.append(_sgn(dot(cross(sub(pb, pa), rel), n)))
        else:
            s = (d * n[0], d * n[1], d * n[2])
            signs = []
            for a, b in zip(face, face[1:] + face[:1]):
                pa, pb = X[a], X[b]
                signs.append(self.fsign(dot(cross(sub(pb, pa), sub(s, pa)), n), 2))
        if min(signs) < 0:
            return Kind.NONE
        if min(signs) == 0:
            return Kind.DEGENERATE
        return Kind.STABLE

    # -- edges
    def edge(self, e) -> Kind:
        i, j = e
        fa, fb = self.P.edge_faces[e]
        a, b = self.X[i], self.X[j]
        ev = sub(b, a)
        ee = dot(ev, ev)
        ae = -dot(a, ev)
        n1, n2 = self.planes[fa][0], self.planes[fb][0]
        if self.exact:
            t0, t1 = _sgn(ae), _sgn(ee - ae)
            s = (ee * a[0] - dot(a, ev) * ev[0],
                 ee * a[1] - dot(a, ev) * ev[1],
                 ee * a[2] - dot(a, ev) * ev[2])
            ref = _sgn(dot(cross(n1, n2), ev))
            c1 = _sgn(dot(cross(n1, s), ev)) * ref
            c2 = _sgn(dot(cross(s, n2), ev)) * ref
        else:
            le = math.sqrt(ee)
            t = ae / ee
            tol = self.tol
            t0 = 0 if abs(t) <= tol else _sgn(t)
            t1 = 0 if abs(1 - t) <= tol else _sgn(1 - t)
            foot = tuple(a[k] + t * ev[k] for k in range(3))
            eu = tuple(x / le for x in ev)
            ref = _sgn(dot(cross(n1, n2), eu))
            c1 = self.fsign(dot(cross(n1, foot), eu), 1) * ref
            c2 = self.fsign(dot(cross(foot, n2), eu), 1) * ref
        if t0 < 0 or t1 < 0 or c1 < 0 or c2 < 0:
            return Kind.NONE
        if t0 == 0 or t1 == 0 or c1 == 0 or c2 == 0 or ref == 0:
            return Kind.DEGENERATE
        return Kind.SADDLE

    # -- vertices
    def vertex(self, i: int) -> Kind:
        q = self.X[i]
        qq = dot(q, q)
        worst = -1
        for j, p in enumerate(self.X):
            if j == i:
                continue
            val = dot(p, q) - qq
            s = _sgn(val) if self.exact else self.fsign(val, 2)
            if s > 0:
                return Kind.NONE
            worst = max(worst, s)
        return Kind.DEGENERATE if worst == 0 else Kind.UNSTABLE


@dataclass(frozen=True)
class EquilibriumReport:
    """Per-site equilibrium status and the resulting counts.

    ``S``, ``U``, ``H`` and ``N`` are ``None`` when any site is degenerate.
    """

    reference: tuple
    faces: tuple
    edges: tuple
    edge_kinds: tuple
    vertices: tuple
    exact: bool = True

    @property
    def degenerate(self) -> bool:
        return Kind.DEGENERATE in self.faces or Kind.DEGENERATE in self.edge_kinds \
            or Kind.DEGENERATE in self.vertices

    def _count(self, kinds, k):
        return None if self.degenerate else sum(1 for x in kinds if x == k)

    @property
    def S(self) -> Optional[int]:
        return self._count(self.faces, Kind.STABLE)

    @property
    def U(self) -> Optional[int]:
        return self._count(self.vertices, Kind.UNSTABLE)

    @property
    def H(self) -> Optional[int]:
        return self._count(self.edge_kinds, Kind.SADDLE)

    @property
    def N(self) -> Optional[int]:
        return None if self.degenerate else self.S + self.U + self.H

    @property
    def cls(self):
        return None if self.degenerate else (self.S, self.U)

    def edge(self, i: int, j: int) -> Kind:
        key = (i, j) if i < j else (j, i)
        return self.edge_kinds[self.edges.index(key)]

    def degenerate_sites(self) -> list:
        out = [("face", k) for k, x in enumerate(self.faces) if x == Kind.DEGENERATE]
        out += [("edge", e) for e, x in zip(self.edges, self.edge_kinds) if x == Kind.DEGENERATE]
        out += [("vertex", i) for i, x in enumerate(self.vertices) if x == Kind.DEGENERATE]
        return out

    def require_counts(self) -> "EquilibriumReport":
        if self.degenerate:
            raise DegenerateEquilibria(f"degenerate sites: {self.degenerate_sites()}", self)
        return self


def _frame(P: Polyhedron, c, exact: Optional[bool]) -> _Frame:
    if c is None:
        c = mass_properties(P).centroid
    if exact is None:
        exact = P.is_exact() and is_exact(c)
    if exact:
        c = to_vec(c)
    fr = _Frame(P, c, exact)
    fr.check_interior()
    fr.c = c
    return fr


def classify_site(P: Polyhedron, c, site) -> Kind:
    """Classify one site, given as ``("face", k)``, ``("edge", (i, j))`` or ``("vertex", i)``."""
    kind, idx = site
    fr = _frame(P, c, None)
    if kind == "face":
        return fr.face(idx)
    if kind == "edge":
        i, j = idx
        return fr.edge((i, j) if i < j else (j, i))
    if kind == "vertex":
        return fr.vertex(idx)
    raise ValueError(f"unknown site type {kind!r}")


def analyze(P: Polyhedron, c=None, exact: Optional[bool] = None) -> EquilibriumReport:
    """Classify every face, edge and vertex of ``P`` w.r.t. ``c`` (default: centroid)."""
    fr = _frame(P, c, exact)
    faces = tuple(fr.face(k) for k in range(P.f))
    edges = P.edges
    ek = tuple(fr.edge(e) for e in edges)
    verts = tuple(fr.vertex(i) for i in range(P.v))
    return EquilibriumReport(tuple(fr.c), faces, edges, ek, verts, fr.exact)


def equilibrium_class(P: Polyhedron, c=None):
    """``(S, U)`` or ``None`` if degenerate."""
    return analyze(P, c).cls


@dataclass(frozen=True)
class BalanceCheck:
    poincare: int
    euler: int
    complexity: int

    @property
    def ok(self) -> bool:
        return self.poincare == 0 and self.euler == 0 and self.complexity == 0


def check_balance_identities(P: Polyhedron, rep: EquilibriumReport) -> BalanceCheck:
    """Residuals of S+U-H=2, f+v-e=2 and C = 2(f+v-S-U)."""
    rep.require_counts()
    C = P.n - rep.N
    return BalanceCheck(rep.S + rep.U - rep.H - 2, P.f + P.v - P.e - 2,
                        C - 2 * (P.f + P.v - rep.S - rep.U))


@dataclass(frozen=True)
class MidscribedCheck:
    residual: float
    report: EquilibriumReport

    @property
    def carried(self) -> int:
        r = self.report
        return (sum(k == Kind.STABLE for k in r.faces) + sum(k == Kind.SADDLE for k in r.edge_kinds)
                + sum(k == Kind.UNSTABLE for k in r.vertices))

    @property
    def ok(self) -> bool:
        r = self.report
        return self.carried == len(r.faces) + len(r.edges) + len(r.vertices)


def tangency_residual(P: Polyhedron, o=(0, 0, 0)) -> float:
    """Worst ``| dist(o, edge) - 1 |`` over all edges (edge segments, not lines)."""
    o = tuple(float(x) for x in o)
    worst = 0.0
    for i, j in P.edges:
        a = tuple(float(x) - y for x, y in zip(P.vertices[i], o))
        b = tuple(float(x) - y for x, y in zip(P.vertices[j], o))
        e = sub(b, a)
        t = min(1.0, max(0.0, -dot(a, e) / dot(e, e)))
        f = tuple(a[k] + t * e[k] for k in range(3))
        worst = max(worst, abs(math.sqrt(dot(f, f)) - 1.0))
    return worst


def verify_midscribed_equilibria(P: Polyhedron, o=(0, 0, 0), tol: float = 1e-9) -> MidscribedCheck:
    """Check that every site of an edge-tangent polyhedron carries an equilibrium w.r.t. ``o``."""
    res = tangency_residual(P, o)
    if res > tol:
        raise NotMidscribed(f"edges not tangent to the unit sphere (worst residual {res:.3g})", res)
    rep = analyze(P, o, exact=False)
    return MidscribedCheck(res, rep)
