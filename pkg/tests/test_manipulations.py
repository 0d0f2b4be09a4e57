from fractions import Fraction

import numpy as np
import pytest

from equilib.complexity import complexity_of
from equilib.constructions import (catalog, erect_tetrahedron, face_truncate, pyramid, recenter_vertex,
                                   truncate_vertex, vertex_build)
from equilib.constructions.manipulations import Step, face_truncate_sites, vertex_build_sites
from equilib.equilibria import Kind, analyze
from equilib.errors import BadSite, ClassNotAchieved, ConditionViolated
from equilib.geometry import hull_from_points, mass_properties, regular_tetrahedron
from equilib.search import SearchParams


def first_success(fn, sites):
    last = None
    for site in sites:
        try:
            return fn(*site)
        except (ClassNotAchieved, ConditionViolated) as exc:
            last = exc
    raise AssertionError(f"no site worked: {last}")


def trivalent(P):
    return [i for i in range(P.v) if P.degree(i) == 3]


def stable_triangles(P):
    rep = analyze(P)
    return [k for k in range(P.f) if len(P.faces[k]) == 3 and rep.faces[k] == Kind.STABLE]


def test_truncate_regular_tetrahedron():
    P = regular_tetrahedron()
    Q = truncate_vertex(P, 0, SearchParams(budget=8))
    assert analyze(Q).cls == (5, 6)
    assert (Q.f, Q.v) == (5, 6)
    assert complexity_of(Q) == 0


def test_truncate_twice():
    P = regular_tetrahedron()
    Q = truncate_vertex(P, 0)
    Q = first_success(lambda q: truncate_vertex(Q, q), [(q,) for q in trivalent(Q)])
    assert analyze(Q).cls == (6, 8)
    assert complexity_of(Q) == 0


def test_truncate_pyramid_base_vertex():
    P = pyramid(6)
    Q = first_success(lambda q: truncate_vertex(P, q), [(q,) for q in trivalent(P)])
    assert analyze(Q).cls == (7, 8)


def test_truncate_returns_replayable_step():
    P = regular_tetrahedron()
    Q, step = truncate_vertex(P, 1, return_step=True)
    assert isinstance(step, Step)
    assert step.apply(P) == Q


def test_truncate_rejects_high_degree():
    P = pyramid(6)
    apex = next(i for i in range(P.v) if P.degree(i) == 5)
    with pytest.raises(BadSite):
        truncate_vertex(P, apex)


@pytest.mark.parametrize("S", [4, 5])
def test_erect_on_pyramid(S):
    P = pyramid(S)
    Q = first_success(lambda F: erect_tetrahedron(P, F), [(F,) for F in stable_triangles(P)])
    assert analyze(Q).cls == (S + 2, S + 1)
    assert complexity_of(Q) == 0


def test_erect_twice():
    P = pyramid(5)
    Q = first_success(lambda F: erect_tetrahedron(P, F), [(F,) for F in stable_triangles(P)])
    Q = first_success(lambda F: erect_tetrahedron(Q, F), [(F,) for F in stable_triangles(Q)])
    assert analyze(Q).cls == (9, 7)


def test_erect_rejects_non_triangle():
    P = pyramid(5)
    square = next(k for k in range(P.f) if len(P.faces[k]) == 4)
    with pytest.raises((BadSite, ConditionViolated)):
        erect_tetrahedron(P, square)


def test_face_truncate_adds_two_unstable():
    P = catalog(2, 4)
    Q = first_success(lambda F, seq: face_truncate(P, F, seq), face_truncate_sites(P))
    assert analyze(Q).cls == (2, 6)
    assert complexity_of(Q) == 6


def test_face_truncate_one_sided():
    P = catalog(2, 4)
    Q = first_success(lambda F, seq: face_truncate(P, F, seq, one_sided=True),
                      face_truncate_sites(P, one_sided=True))
    assert analyze(Q).cls == (2, 5)


def test_face_truncate_keeps_zero_excess_growth():
    # (5, 6) -> (5, 8): complexity 0 -> 2
    P = truncate_vertex(regular_tetrahedron(), 0)
    Q = first_success(lambda F, seq: face_truncate(P, F, seq), face_truncate_sites(P))
    assert analyze(Q).cls == (5, 8)
    assert complexity_of(Q) == 2


def test_face_truncate_bad_sites():
    P = catalog(2, 4)
    with pytest.raises(ConditionViolated):
        face_truncate(P, 0, (0, 0, 0))


def test_vertex_build_adds_two_stable():
    P = pyramid(6)
    P = first_success(lambda q: truncate_vertex(P, q), [(q,) for q in trivalent(P)])
    assert analyze(P).cls == (7, 8)
    sites = vertex_build_sites(P)
    assert sites
    Q = first_success(lambda F, tri: vertex_build(P, F, tri), sites[:12])
    assert analyze(Q).cls == (9, 8)


def test_vertex_build_from_six_five():
    P = pyramid(4)
    P = first_success(lambda F: erect_tetrahedron(P, F), [(F,) for F in stable_triangles(P)])
    assert analyze(P).cls == (6, 5)
    Q = first_success(lambda F, tri: vertex_build(P, F, tri), vertex_build_sites(P)[:12])
    assert analyze(Q).cls == (8, 5)
    assert complexity_of(Q) == 2


def test_vertex_build_conditions_checked():
    P = pyramid(5)
    with pytest.raises(ConditionViolated):
        vertex_build(P, 0, (0, 0, 0))


def test_recenter_noop_when_centred():
    P = regular_tetrahedron()
    Q = recenter_vertex(P, 0, (0, 0, 0))
    assert np.allclose(Q.as_float(), P.as_float())


def test_recenter_recovers_apex():
    pts = [(0, 0, 0), (4, 0, 0), (0, 4, 0), (1, 1, 3)]
    P = hull_from_points(pts)
    o = mass_properties(P).centroid
    moved = hull_from_points(pts[:3] + [(Fraction(11, 10), Fraction(9, 10), Fraction(31, 10))])
    q = moved.vertices.index((Fraction(11, 10), Fraction(9, 10), Fraction(31, 10)))
    Q = recenter_vertex(moved, q, o)
    assert np.allclose(Q.as_float()[q], [1, 1, 3], atol=1e-9)


def test_recenter_needs_simple_vertex():
    P = pyramid(6)
    apex = next(i for i in range(P.v) if P.degree(i) == 5)
    with pytest.raises(BadSite):
        recenter_vertex(P, apex)
