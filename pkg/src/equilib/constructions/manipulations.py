"""Local manipulations that shift a polyhedron between equilibrium classes.

Each manipulation has two layers:

* an explicit form (``apply_*``) that maps a polyhedron plus rational
  parameters to a new polyhedron; recipes replay these, so they must be
  deterministic;
* a tuned form that derives the parameters from the current centre of mass
  and a shrinking schedule, verifying every candidate exactly.

All geometry stays rational.  Directions that would need a square root are
snapped to a fixed grid before use; the exact check afterwards is what makes
a candidate acceptable, not the accuracy of the snap.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from ..equilibria import Kind, analyze
from ..errors import BadSite, BudgetExhausted, ClassNotAchieved, ConditionViolated, NoConvergence
from ..geometry import (Polyhedron, _mass_float, add, clip, cross, dot, mass_properties, norm2, scale, sub,
                        with_point)
from ..search import SearchParams, class_check, shrink_schedule, tune

FINE = 2 ** 24
FIXED_POINT_ITERS = 4


@dataclass(frozen=True)
class Step:
    """One replayable manipulation: name, site indices and rational parameters."""

    name: str
    site: tuple
    params: tuple

    def apply(self, P: Polyhedron) -> Polyhedron:
        return APPLY[self.name](P, self.site, self.params)


# ---------------------------------------------------------------- helpers

def _q(x: float, den: int = FINE) -> Fraction:
    return Fraction(round(x * den), den)


def _fcentroid(P: Polyhedron):
    """Float centre of mass; enough to steer the fixed-point iterations."""
    with np.errstate(all="ignore"):
        c = _mass_float(P).centroid
    if not all(math.isfinite(x) for x in c):
        raise NoConvergence("candidate collapsed (zero volume)")
    return tuple(Fraction(x) for x in c)


def _fl(v):
    return tuple(float(x) for x in v)


def _approx_norm(v) -> Fraction:
    return _q(math.sqrt(float(norm2(v))))


def snap_direction(v, den: int = FINE):
    """Unit-ish rational vector close to ``v / |v|``."""
    f = np.array(_fl(v))
    f /= np.linalg.norm(f)
    return tuple(_q(x, den) for x in f)


def _grid_for(length) -> int:
    """Power-of-two denominator resolving ``length`` to about 2^-20 relative."""
    L = max(float(length), 1e-300)
    return 2 ** max(20, int(math.ceil(-math.log2(L))) + 20)


def _round_point(p, length):
    den = _grid_for(length)
    return tuple(_q(float(x), den) for x in p)


def _face_plane(P: Polyhedron, F: int):
    n, d = P.face_plane(F)
    return n, d


def _project_to_plane(p, n, d):
    t = (d - dot(n, p)) / norm2(n)
    return add(p, scale(n, t))


def _line_intersection(p, u, r, w):
    """Intersection of coplanar lines ``p + s u`` and ``r + t w``; ``None`` if parallel."""
    uw = cross(u, w)
    den = norm2(uw)
    if den == 0:
        return None
    s = dot(cross(sub(r, p), w), uw) / den
    return add(p, scale(u, s))


def _find_vertex(P: Polyhedron, p) -> Optional[int]:
    try:
        return P.vertices.index(p)
    except ValueError:
        return None


def _cycle_run(face: tuple, seq: tuple) -> bool:
    """True if ``seq`` appears consecutively in the cyclic ``face`` (either direction)."""
    m = len(face)
    for cyc in (face, face[::-1]):
        for s in range(m):
            if all(cyc[(s + k) % m] == seq[k] for k in range(len(seq))):
                return True
    return False


def _other_face(P: Polyhedron, i: int, j: int, F: int) -> int:
    e = (i, j) if i < j else (j, i)
    a, b = P.edge_faces[e]
    return b if a == F else a


# ---------------------------------------------------------- explicit forms

def apply_cut(P: Polyhedron, site, params) -> Polyhedron:
    """Keep the half-space ``n . x <= d`` with ``params = (nx, ny, nz, d)``."""
    n = tuple(params[:3])
    return clip(P, n, params[3])


def apply_apex(P: Polyhedron, site, params) -> Polyhedron:
    """Hull of ``P`` and the point ``params``."""
    return with_point(P, tuple(params))


def apply_vertex_build(P: Polyhedron, site, params) -> Polyhedron:
    """Raise an apex over a face and fold the face into three.

    ``site = (q1, a, b)`` with ``[a, b]`` the edge the apex leans over;
    ``params`` is the apex.
    """
    q1, a, b = (P.vertices[i] for i in site)
    q = tuple(params)
    Q = with_point(P, q)
    for u, w, keep in ((a, q, b), (q, b, a)):
        n = cross(sub(u, q1), sub(w, q1))
        if dot(n, sub(keep, q1)) > 0:
            n = scale(n, -1)
        Q = clip(Q, n, dot(n, q1))
    return Q


APPLY = {
    "truncate_vertex": apply_cut,
    "face_truncate": apply_cut,
    "face_truncate_one_sided": apply_cut,
    "erect_tetrahedron": apply_apex,
    "vertex_build": apply_vertex_build,
    "vertex_build_one_sided": apply_vertex_build,
}

# (df, dv, dS, dU) of each manipulation
DELTAS = {
    "truncate_vertex": (1, 2, 1, 2),
    "erect_tetrahedron": (2, 1, 2, 1),
    "face_truncate": (1, 2, 0, 2),
    "face_truncate_one_sided": (1, 1, 0, 1),
    "vertex_build": (2, 1, 2, 0),
    "vertex_build_one_sided": (2, 1, 1, 0),
}


def _target(P: Polyhedron, rep, name: str):
    df, dv, dS, dU = DELTAS[name]
    return (rep.S + dS, rep.U + dU), P.f + df, P.v + dv


def _finish(P_new: Polyhedron, step: Step, return_step: bool):
    return (P_new, step) if return_step else P_new


# --------------------------------------------------------- truncate_vertex

def truncate_vertex(P: Polyhedron, q: int, params: SearchParams = SearchParams(), *,
                    return_step: bool = False):
    """Cut a trivalent vertex by a plane orthogonal to the reference direction.

    The plane sits at distance ``eps`` from the vertex, ``eps`` shrinking
    from ``params.epsilon0`` until the result lands in ``(S+1, U+2)`` with
    one more face and two more vertices.
    """
    if P.degree(q) != 3:
        raise BadSite(f"vertex {q} has degree {P.degree(q)}, need 3")
    rep = analyze(P).require_counts()
    c = mass_properties(P).centroid
    qv = P.vertices[q]
    n = snap_direction(sub(qv, c))
    nn = _approx_norm(n)
    base = dot(n, qv)
    target, f, v = _target(P, rep, "truncate_vertex")
    check = class_check(target, f, v)
    eps0 = params.epsilon0 or P.bbox_extent() / 16

    def step(vals):
        return apply_cut(P, (q,), n + (base - vals["eps"] * nn,))

    res = _tune(step, check, params, ({"eps": e} for e in shrink_schedule(eps0, params.shrink, params.budget)),
                "truncate_vertex", rep)
    return _finish(res.polyhedron, Step("truncate_vertex", (q,), n + (base - res.values["eps"] * nn,)),
                   return_step)


def _tune(step, check, params, schedule, name, rep):
    try:
        return tune(step, check, params, schedule)
    except BudgetExhausted as exc:
        raise ClassNotAchieved(f"{name}: {exc}", rep.cls, exc.best) from exc


# ------------------------------------------------------ erect_tetrahedron

def erect_tetrahedron(P: Polyhedron, F: int, params: SearchParams = SearchParams(), *,
                      return_step: bool = False):
    """Raise a flat tetrahedron on a stable triangular face.

    The apex sits at height ``eps`` above the foot of the centre of mass on
    the face; the foot is re-derived from the new centre of mass until it
    settles, which keeps the apex on the line through the centre of mass
    normal to the face.
    """
    face = P.faces[F]
    if len(face) != 3:
        raise BadSite(f"face {F} is not a triangle")
    rep = analyze(P).require_counts()
    if rep.faces[F] != Kind.STABLE:
        raise BadSite(f"face {F} carries no stable equilibrium")
    n, d = _face_plane(P, F)
    nhat = snap_direction(n)
    c0 = mass_properties(P).centroid
    target, f, v = _target(P, rep, "erect_tetrahedron")

    def apex_for(eps):
        c = c0
        q = None
        for _ in range(FIXED_POINT_ITERS):
            foot = _project_to_plane(c, n, d)
            q = _round_point(add(foot, scale(nhat, eps)), eps)
            c = _fcentroid(apply_apex(P, (F,), q))
        return q

    cache = {}

    def step(vals):
        q = apex_for(vals["eps"])
        cache[vals["eps"]] = q
        return apply_apex(P, (F,), q)

    def extra(Q, r):
        return None

    eps0 = params.epsilon0 or P.bbox_extent() / 16
    res = _tune(step, class_check(target, f, v, extra), params,
                ({"eps": e} for e in shrink_schedule(eps0, params.shrink, params.budget)),
                "erect_tetrahedron", rep)
    q = cache[res.values["eps"]]
    return _finish(res.polyhedron, Step("erect_tetrahedron", (F,), q), return_step)


def erect_alpha(P: Polyhedron, F: int, apex) -> float:
    """In-plane offset of the apex foot from the face's stable point (the ``alpha`` coordinate)."""
    n, d = _face_plane(P, F)
    c = mass_properties(P).centroid
    foot_c = _project_to_plane(c, n, d)
    foot_q = _project_to_plane(tuple(apex), n, d)
    return math.sqrt(float(norm2(sub(foot_q, foot_c))))


# ---------------------------------------------------------- face_truncate

def face_truncate_conditions(P: Polyhedron, F: int, seq, one_sided: bool, rep=None):
    """Check the preconditions; return ``None`` or the name of the failed condition."""
    rep = rep or analyze(P)
    face = P.faces[F]
    if len(seq) < 3 or len(set(seq)) != len(seq) or not _cycle_run(face, tuple(seq)):
        return "sites"
    V = P.vertices
    q1, q2, qa, qb = V[seq[0]], V[seq[1]], V[seq[-2]], V[seq[-1]]
    x = _line_intersection(q1, sub(q2, q1), qb, sub(qa, qb))
    if x is None or not norm2(sub(x, q1)) > norm2(sub(x, q2)):
        return "i"
    if one_sided:
        if rep.vertices[seq[0]] != Kind.UNSTABLE or rep.edge(seq[-2], seq[-1]) != Kind.SADDLE:
            return "ii"
    elif rep.edge(seq[0], seq[1]) != Kind.SADDLE or rep.edge(seq[-2], seq[-1]) != Kind.SADDLE:
        return "ii"
    if any(P.degree(i) != 3 for i in seq[1:-1]):
        return "iii"
    return None


def _cut_plane(P, F, seq, s, t, tau, one_sided):
    """Rational plane through y_a(s), y_b(t) tilted by about ``tau`` from face F."""
    V = P.vertices
    q1, q2, qa, qb = V[seq[0]], V[seq[1]], V[seq[-2]], V[seq[-1]]
    nF, _ = _face_plane(P, F)
    ya = q1 if one_sided else add(q1, scale(sub(q2, q1), s))
    yb = add(qb, scale(sub(qa, qb), t))
    dvec = sub(yb, ya)
    w = cross(nF, dvec)
    if dot(w, sub(q2, ya)) < 0:
        w = scale(w, -1)
    wn = snap_direction(w)
    nn = snap_direction(nF)
    m = sub(wn, scale(nn, tau))
    nG = cross(dvec, m)
    if dot(nG, nF) < 0:
        nG = scale(nG, -1)
    return nG, dot(nG, ya), ya, yb


def _edge_window(c, p_from, p_to, nG, nA):
    """Foot parameter of ``c`` on the edge and the admissible offset beyond it."""
    e = sub(p_to, p_from)
    ee = dot(e, e)
    s_foot = dot(sub(c, p_from), e) / ee
    foot = add(p_from, scale(e, s_foot))
    u = cross(nG, nA)
    if dot(u, e) < 0:
        u = scale(u, -1)
    eu = dot(e, u)
    if eu == 0:
        return s_foot, 0.0
    eta = dot(sub(c, foot), u) / eu  # as a fraction of the edge vector
    return float(s_foot), float(eta)


def face_truncate(P: Polyhedron, F: int, sites, params: SearchParams = SearchParams(),
                  one_sided: bool = False, *, return_step: bool = False):
    """Shallow oblique cut of face ``F`` creating two (or one) new unstable vertices.

    ``sites`` lists consecutive vertices ``q1 .. qj`` of the face; the cut
    meets ``[q1, q2]`` and ``[q_{j-1}, q_j]`` (only the latter when
    ``one_sided``, where the plane passes through ``q1``) and removes
    ``q2 .. q_{j-1}``.
    """
    seq = tuple(sites)
    rep = analyze(P).require_counts()
    bad = face_truncate_conditions(P, F, seq, one_sided, rep)
    if bad:
        raise ConditionViolated(f"face_truncate: condition ({bad}) fails on face {F} sites {seq}", bad)
    name = "face_truncate_one_sided" if one_sided else "face_truncate"
    target, f, v = _target(P, rep, name)
    V = P.vertices
    q1, q2, qa, qb = V[seq[0]], V[seq[1]], V[seq[-2]], V[seq[-1]]
    A_a = _other_face(P, seq[0], seq[1], F)
    A_b = _other_face(P, seq[-2], seq[-1], F)
    nAa, _ = _face_plane(P, A_a)
    nAb, _ = _face_plane(P, A_b)
    c0 = mass_properties(P).centroid
    ea = math.sqrt(float(norm2(sub(q2, q1))))

    def solve(tau, mu):
        c = c0
        s = t = Fraction(0)
        sa, eta_a = _edge_window(c, q1, q2, nAa, nAa)
        tb, eta_b = _edge_window(c, qb, qa, nAb, nAb)
        s, t = _q(sa), _q(tb)
        plane = None
        for _ in range(FIXED_POINT_ITERS):
            nG, dG, ya, yb = _cut_plane(P, F, seq, s, t, tau, one_sided)
            sa, eta_a = _edge_window(c, q1, q2, nG, nAa)
            tb, eta_b = _edge_window(c, qb, qa, nG, nAb)
            s = _q(sa + float(mu) * max(eta_a, 0.0), _grid_for(ea * float(tau) ** 2))
            t = _q(tb + float(mu) * max(eta_b, 0.0), _grid_for(ea * float(tau) ** 2))
            if not (0 < t < 1) or (not one_sided and not 0 < s < 1):
                raise NoConvergence("cut left the edge")
            nG, dG, ya, yb = _cut_plane(P, F, seq, s, t, tau, one_sided)
            plane = nG + (dG,)
            c = _fcentroid(apply_cut(P, seq, plane))
        return plane

    cache = {}

    def step(vals):
        plane = solve(vals["tau"], vals["mu"])
        cache[(vals["tau"], vals["mu"])] = plane
        return apply_cut(P, seq, plane)

    tau0 = params.epsilon0 or Fraction(1, 8)
    sched = ({"tau": tau, "mu": mu}
             for tau in shrink_schedule(tau0, params.shrink, params.budget)
             for mu in (Fraction(1, 2), Fraction(1, 4), Fraction(3, 4)))
    res = _tune(step, class_check(target, f, v), SearchParams(budget=3 * params.budget), sched,
                name, rep)
    plane = cache[(res.values["tau"], res.values["mu"])]
    return _finish(res.polyhedron, Step(name, seq, plane), return_step)


def face_truncate_sites(P: Polyhedron, one_sided: bool = False, rep=None, max_j: int = 6):
    """All ``(F, seq)`` meeting the preconditions, shortest runs first."""
    rep = rep or analyze(P)
    out = []
    for F, face in enumerate(P.faces):
        m = len(face)
        for cyc in (face, face[::-1]):
            for s in range(m):
                for j in range(3, min(m, max_j) + 1):
                    seq = tuple(cyc[(s + k) % m] for k in range(j))
                    if face_truncate_conditions(P, F, seq, one_sided, rep) is None:
                        out.append((j, F, seq))
    out.sort()
    return [(F, seq) for _, F, seq in out]


# ----------------------------------------------------------- vertex_build

def _in_triangle(p, a, b, c, n) -> bool:
    s1 = dot(cross(sub(b, a), sub(p, a)), n)
    s2 = dot(cross(sub(c, b), sub(p, b)), n)
    s3 = dot(cross(sub(a, c), sub(p, c)), n)
    return (s1 > 0 and s2 > 0 and s3 > 0) or (s1 < 0 and s2 < 0 and s3 < 0)


def vertex_build_conditions(P: Polyhedron, F: int, tri, rep=None, c=None):
    rep = rep or analyze(P)
    c = c if c is not None else mass_properties(P).centroid
    face = P.faces[F]
    q1, a, b = tri
    if len({q1, a, b}) != 3 or any(i not in face for i in tri) or not _cycle_run(face, (a, b)):
        return "sites"
    V = P.vertices
    n, d = _face_plane(P, F)
    cF = _project_to_plane(c, n, d)
    if rep.faces[F] != Kind.STABLE or not _in_triangle(cF, V[q1], V[a], V[b], n):
        return "i"
    if rep.edge(a, b) != Kind.SADDLE:
        return "ii"
    if any(P.degree(i) != 3 for i in face if i not in tri):
        return "iii"
    e = sub(V[b], V[a])
    cE = add(V[a], scale(e, dot(sub(c, V[a]), e) / norm2(e)))
    if cross(sub(cF, V[q1]), sub(cE, V[q1])) == (0, 0, 0):
        return "iv"
    return None


def vertex_build(P: Polyhedron, F: int, triangle, params: SearchParams = SearchParams(),
                 one_sided: bool = False, *, return_step: bool = False):
    """Replace face ``F`` by three faces meeting at a new low apex.

    ``triangle = (q1, q_{j-1}, q_j)``: the apex leans over the edge
    ``[q_{j-1}, q_j]`` near where the ray from ``q1`` through the stable
    point meets it.  ``one_sided`` aims the slope over that edge past the
    stable window so only two of the three new faces are stable.
    """
    tri = tuple(triangle)
    rep = analyze(P).require_counts()
    c0 = mass_properties(P).centroid
    bad = vertex_build_conditions(P, F, tri, rep, c0)
    if bad:
        raise ConditionViolated(f"vertex_build: condition ({bad}) fails on face {F} triangle {tri}", bad)
    name = "vertex_build_one_sided" if one_sided else "vertex_build"
    target, f, v = _target(P, rep, name)
    V = P.vertices
    q1, a, b = (V[i] for i in tri)
    n, d = _face_plane(P, F)
    nhat = np.array(_fl(n)) / math.sqrt(float(norm2(n)))

    def apex(lam, mu, c):
        cF = _project_to_plane(c, n, d)
        x = _line_intersection(q1, sub(cF, q1), a, sub(b, a))
        e = np.array(_fl(sub(b, a)))
        e /= np.linalg.norm(e)
        xf, q1f, cFf, cf = (np.array(_fl(p)) for p in (x, q1, cF, c))
        perp = lambda p: np.linalg.norm((p - xf) - np.dot(p - xf, e) * e)
        d1 = perp(q1f)
        delta = perp(cFf)
        hc = abs(float(np.dot(cf - cFf, nhat)))
        L = float(lam) * d1
        # slope of the face over the edge: foot of c lands at fraction mu of its height
        g = lambda al: delta * math.cos(al) - hc * math.sin(al) - float(mu) * L / math.cos(al)
        lo, hi = 0.0, math.atan2(delta, hc) if mu > 0 else math.pi / 2 - 1e-9
        if mu < 0:
            lo = math.atan2(delta, hc)
        for _ in range(200):
            mid = (lo + hi) / 2
            if (g(mid) > 0) == (g(lo) > 0):
                lo = mid
            else:
                hi = mid
        al = (lo + hi) / 2
        qF = xf + float(lam) * (q1f - xf)
        qf = qF + L * math.tan(al) * nhat
        return _round_point(qf, L * math.tan(al))

    def build(lam, mu):
        c = c0
        q = None
        for _ in range(FIXED_POINT_ITERS):
            q = apex(lam, mu, c)
            c = _fcentroid(apply_vertex_build(P, tri, q))
        return q

    def extra(Q, r):
        k = _find_vertex(Q, cache_last[0])
        if k is not None and r.vertices[k] == Kind.UNSTABLE:
            return "new apex is an unstable equilibrium"
        return None

    cache = {}
    cache_last = [None]

    def step(vals):
        q = build(vals["lam"], vals["mu"])
        cache[(vals["lam"], vals["mu"])] = q
        cache_last[0] = q
        return apply_vertex_build(P, tri, q)

    mus = (Fraction(-1, 4), Fraction(-1, 2), Fraction(-1, 8)) if one_sided else \
        (Fraction(1, 2), Fraction(1, 4), Fraction(3, 4))
    lam0 = params.epsilon0 or Fraction(1, 8)
    sched = ({"lam": lam, "mu": mu} for lam in shrink_schedule(lam0, params.shrink, params.budget)
             for mu in mus)
    res = _tune(step, class_check(target, f, v, extra), SearchParams(budget=3 * params.budget),
                sched, name, rep)
    q = cache[(res.values["lam"], res.values["mu"])]
    return _finish(res.polyhedron, Step(name, tri, q), return_step)


def vertex_build_sites(P: Polyhedron, rep=None):
    """All ``(F, (q1, a, b))`` meeting the preconditions.

    Large faces come first, then apexes ``q1`` far from the edge ``[a, b]``:
    both leave the slope face more room around the moving stable point.
    """
    rep = rep or analyze(P)
    c = mass_properties(P).centroid
    out = []
    for F, face in enumerate(P.faces):
        if rep.faces[F] != Kind.STABLE:
            continue
        m = len(face)
        for k in range(m):
            a, b = face[k], face[(k + 1) % m]
            for q1 in face:
                if q1 in (a, b):
                    continue
                if vertex_build_conditions(P, F, (q1, a, b), rep, c) is None:
                    out.append((-m, -_line_distance(P, q1, a, b), F, (q1, a, b)))
    out.sort()
    return [(F, tri) for _, _, F, tri in out]


def _line_distance(P: Polyhedron, q, a, b) -> float:
    V = P.vertices
    e = sub(V[b], V[a])
    return math.sqrt(float(norm2(cross(sub(V[q], V[a]), e)) / norm2(e)))


# --------------------------------------------------------- recenter_vertex

def recenter_vertex(P: Polyhedron, q: int, o=(0, 0, 0), tol: float = 1e-12,
                    max_iter: int = 100) -> Polyhedron:
    """Move vertex ``q`` (float) until the centre of mass coincides with ``o``.

    Newton iteration on the first moment ``x -> w(x) (c(x) - o)`` with a
    finite-difference Jacobian and step halving.  Combinatorics are kept;
    the faces at ``q`` must all be triangles so they stay planar.
    """
    if P.degree(q) != 3 or any(len(P.faces[k]) != 3 for k in P.vertex_faces[q]):
        raise BadSite(f"vertex {q} needs degree 3 with triangular faces")
    o = np.array(_fl(o))
    X = P.as_float()
    diam = P.diameter()
    T = np.array([(f[0], f[i], f[i + 1]) for f in P.faces for i in range(1, len(f) - 1)])

    def moment(xq):
        Y = X.copy()
        Y[q] = xq
        p0, p1, p2 = Y[T[:, 0]] - o, Y[T[:, 1]] - o, Y[T[:, 2]] - o
        dets = np.einsum("ij,ij->i", p0, np.cross(p1, p2))
        return (dets[:, None] * (p0 + p1 + p2)).sum(0) / 24.0, dets.sum() / 6.0

    x = X[q].copy()
    for it in range(max_iter):
        M, w = moment(x)
        if np.linalg.norm(M / w) <= tol * diam:
            Y = X.copy()
            Y[q] = x
            return _float_poly(P, Y, q, o, it)
        h = 1e-7 * diam
        J = np.empty((3, 3))
        for k in range(3):
            dx = np.zeros(3)
            dx[k] = h
            J[:, k] = (moment(x + dx)[0] - moment(x - dx)[0]) / (2 * h)
        step = np.linalg.solve(J, -M)
        lam = 1.0
        while lam > 1e-6:
            Mn, _ = moment(x + lam * step)
            if np.linalg.norm(Mn) < np.linalg.norm(M):
                break
            lam /= 2
        x = x + lam * step
    raise NoConvergence(f"recentering did not converge in {max_iter} iterations")


def _float_poly(P, Y, q, o, iters):
    Q = Polyhedron(tuple(tuple(float(c) for c in row) for row in Y), P.faces, P.name)
    before = analyze(P, tuple(o), exact=False)
    after = analyze(Q, tuple(o), exact=False)
    if (before.faces, before.edge_kinds, before.vertices) != (after.faces, after.edge_kinds, after.vertices):
        raise NoConvergence("recentering changed the equilibrium sites")
    object.__setattr__(Q, "name", f"{P.name} recentred ({iters} iterations)")
    return Q
