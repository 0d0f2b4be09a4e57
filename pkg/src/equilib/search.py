"""Parameter tuning for local manipulations and randomized surveys."""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

import numpy as np

from .equilibria import Kind, _Frame, analyze
from .errors import BudgetExhausted, CounterexampleFound, DegenerateInput, EquilibError
from .geometry import Polyhedron, _mass_float, _orient, hull_from_points

COORD_DEN = 2 ** 16


@dataclass(frozen=True)
class SearchParams:
    """Knobs shared by every tuned manipulation.

    ``epsilon0`` of ``None`` means "bounding-box extent / 16" of the input.
    """

    epsilon0: Optional[Fraction] = None
    shrink: Fraction = Fraction(1, 2)
    budget: int = 64
    grid_rounds: int = 6
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.shrink < 1:
            raise ValueError("shrink must lie in (0, 1)")
        if self.budget < 1:
            raise ValueError("budget must be positive")


@dataclass(frozen=True)
class Verdict:
    ok: bool
    score: int
    detail: str


@dataclass
class TuneResult:
    values: dict
    polyhedron: Polyhedron
    trials: int


def class_check(target, f: Optional[int] = None, v: Optional[int] = None,
                extra: Optional[Callable] = None, screen: bool = True) -> Callable[[Polyhedron], Verdict]:
    """Predicate: exact class equals ``target`` and (optionally) face/vertex counts match.

    Acceptance is always decided by the exact backend; the float screen can
    only reject candidates early.
    """
    S, U = target

    def check(P: Polyhedron) -> Verdict:
        if screen:
            # cheap float pass; only a clean, confidently wrong answer is trusted
            try:
                quick = analyze(P, _mass_float(P).centroid, exact=False)
            except EquilibError:
                quick = None
            if quick is not None and not quick.degenerate and quick.cls != (S, U):
                return Verdict(False, abs(quick.S - S) + abs(quick.U - U) + 1,
                               f"float screen: (S,U)=({quick.S},{quick.U})")
        rep = analyze(P)
        bad = rep.degenerate_sites()
        if bad:
            return Verdict(False, 100 + len(bad), f"degenerate sites {bad[:4]}")
        score = abs(rep.S - S) + abs(rep.U - U)
        if f is not None:
            score += abs(P.f - f)
        if v is not None:
            score += abs(P.v - v)
        if score:
            return Verdict(False, score, f"got (S,U)=({rep.S},{rep.U}) (f,v)=({P.f},{P.v}); "
                                         f"want ({S},{U}) ({f},{v})")
        if extra is not None:
            msg = extra(P, rep)
            if msg:
                return Verdict(False, 1, msg)
        return Verdict(True, 0, "ok")
    return check


def shrink_schedule(eps0, shrink=Fraction(1, 2), budget: int = 64):
    eps = Fraction(eps0)
    for _ in range(budget):
        yield eps
        eps *= shrink


def tune(step: Callable[[dict], Polyhedron], check: Callable[[Polyhedron], Verdict],
         params: SearchParams, schedule: Iterable[dict]) -> TuneResult:
    """Try parameter vectors in order until ``check`` accepts the result.

    ``step`` builds a candidate from a parameter dict and may raise a library
    error, which counts as a failed trial.  The search is deterministic for a
    given schedule.
    """
    best = None
    trials = 0
    for values in itertools.islice(schedule, params.budget):
        trials += 1
        try:
            P = step(values)
        except EquilibError as exc:
            verdict = Verdict(False, 10 ** 6, f"{type(exc).__name__}: {exc}")
        else:
            verdict = check(P)
            if verdict.ok:
                return TuneResult(values, P, trials)
        if best is None or verdict.score < best[1].score:
            best = (values, verdict)
    if best is None:
        raise BudgetExhausted("empty schedule")
    raise BudgetExhausted(f"no parameters accepted after {trials} trials; best near miss "
                          f"{_fmt(best[0])}: {best[1].detail}", best)


def _fmt(values: dict) -> str:
    return "{" + ", ".join(f"{k}={v}" for k, v in values.items()) + "}"


def grid_refine(score: Callable[[float, float], float], box, rounds: int = 6, n: int = 9,
                factor: int = 3, stop: Optional[float] = None):
    """Coarse-to-fine minimisation of ``score`` over a 2D box.

    Each round evaluates an ``n x n`` lattice, then shrinks the box by
    ``factor`` around the best cell.  Returns ``(best_point, best_score)``.
    """
    (x0, x1), (y0, y1) = box
    best = None
    for _ in range(rounds):
        xs = np.linspace(x0, x1, n)
        ys = np.linspace(y0, y1, n)
        for x in xs:
            for y in ys:
                s = score(float(x), float(y))
                if best is None or s < best[1]:
                    best = ((float(x), float(y)), s)
        if stop is not None and best[1] <= stop:
            break
        (bx, by), _ = best
        wx, wy = (x1 - x0) / (2 * factor), (y1 - y0) / (2 * factor)
        x0, x1, y0, y1 = bx - wx, bx + wx, by - wy, by + wy
    return best


# ------------------------------------------------------------------ random

def random_points(n: int, rng: np.random.Generator) -> list:
    raw = rng.integers(-COORD_DEN, COORD_DEN + 1, size=(n, 3))
    return [tuple(Fraction(int(c), COORD_DEN) for c in row) for row in raw]


def random_polyhedron(n_points: int, seed: int) -> Polyhedron:
    """Hull of ``n_points`` seeded rational points in ``[-1, 1]^3``.

    Degenerate draws are re-rolled from the same generator, so the result
    depends only on ``(n_points, seed)``.
    """
    if n_points < 4:
        raise ValueError("need at least 4 points")
    rng = np.random.default_rng(seed)
    while True:
        try:
            return hull_from_points(random_points(n_points, rng), f"random({n_points},{seed})")
        except DegenerateInput:
            continue


def random_interior_polytope(seed: int, n_min: int = 4, n_max: int = 30):
    """Random polytope containing the origin strictly, for polarity tests."""
    rng = np.random.default_rng(seed)
    while True:
        n = int(rng.integers(n_min, n_max + 1))
        try:
            P = hull_from_points(random_points(n, rng))
        except DegenerateInput:
            continue
        if P.contains_strictly((0, 0, 0)):
            return P


# ------------------------------------------------------------------ survey

@dataclass
class SurveyResult:
    trials: int
    seed: int
    histogram: Counter = field(default_factory=Counter)
    degenerate: int = 0
    flat: int = 0
    min_equilibrium_vertices: Optional[int] = None

    @property
    def degeneracies(self) -> int:
        return self.degenerate + self.flat

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "histogram": {f"{s},{u}": c for (s, u), c in sorted(self.histogram.items())},
            "degenerate": self.degenerate,
            "flat": self.flat,
            "min_equilibrium_vertices": self.min_equilibrium_vertices,
        }


_TET_FACES = ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))


def _tetra(pts) -> Optional[Polyhedron]:
    if _orient(*pts) == 0:
        return None
    faces = []
    for i, j, k in _TET_FACES:
        opp = 6 - i - j - k
        # the opposite vertex must lie below an outward face
        faces.append((i, k, j) if _orient(pts[i], pts[j], pts[k], pts[opp]) > 0 else (i, j, k))
    return Polyhedron(tuple(tuple(p) for p in pts), tuple(faces))


def classify_tetrahedron(pts) -> Optional[tuple]:
    """``(S, U, equilibrium vertices)`` for an integer tetrahedron, ``None`` if degenerate.

    Coordinates are scaled by 4 so the centroid is an integer point.
    """
    P = _tetra([tuple(4 * int(c) for c in p) for p in pts])
    if P is None:
        raise DegenerateInput("flat tetrahedron")
    c = tuple(sum(p[j] for p in P.vertices) // 4 for j in range(3))
    fr = _Frame(P, c, True)
    faces = [fr.face(k) for k in range(4)]
    verts = [fr.vertex(i) for i in range(4)]
    edges = [fr.edge(e) for e in P.edges]
    if Kind.DEGENERATE in faces or Kind.DEGENERATE in verts or Kind.DEGENERATE in edges:
        return None
    U = verts.count(Kind.UNSTABLE)
    return faces.count(Kind.STABLE), U, U


def tetrahedron_survey(trials: int, seed: int, check: bool = True) -> SurveyResult:
    """Classify ``trials`` random tetrahedra with vertices on a ``2^16`` grid in ``[-1,1]^3``."""
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = np.random.default_rng(seed)
    raw = rng.integers(-COORD_DEN, COORD_DEN + 1, size=(trials, 4, 3))
    res = SurveyResult(trials, seed)
    for k in range(trials):
        try:
            out = classify_tetrahedron(raw[k].tolist())
        except DegenerateInput:
            res.flat += 1
            continue
        if out is None:
            res.degenerate += 1
            continue
        S, U, ev = out
        res.histogram[(S, U)] += 1
        if res.min_equilibrium_vertices is None or ev < res.min_equilibrium_vertices:
            res.min_equilibrium_vertices = ev
        if check and (S < 2 or U < 2):
            raise CounterexampleFound(f"tetrahedron {raw[k].tolist()} in class ({S},{U})")
    return res
