from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from equilib.equilibria import analyze
from equilib.errors import BudgetExhausted, DegenerateInput
from equilib.geometry import cube, hull_from_points
from equilib.search import (SearchParams, class_check, classify_tetrahedron, random_interior_polytope,
                            random_polyhedron, shrink_schedule, tetrahedron_survey, tune)


def test_class_check_verdicts():
    ok = class_check((6, 8), 6, 8)(cube())
    assert ok.ok and ok.score == 0
    bad = class_check((6, 9))(cube())
    assert not bad.ok and bad.score >= 1
    assert not class_check((6, 8), f=7)(cube()).ok


def test_impossible_target_exhausts_budget():
    def step(vals):
        return cube(0, vals["eps"])
    with pytest.raises(BudgetExhausted) as err:
        tune(step, class_check((3, 3)), SearchParams(budget=5), ({"eps": e} for e in shrink_schedule(1)))
    assert "5 trials" in str(err.value)


def test_tune_returns_first_accepted():
    res = tune(lambda v: cube(0, v["eps"]), class_check((6, 8)), SearchParams(),
               ({"eps": e} for e in shrink_schedule(2)))
    assert res.trials == 1 and res.values == {"eps": 2}


def test_shrink_schedule():
    assert list(shrink_schedule(1, Fraction(1, 2), 3)) == [1, Fraction(1, 2), Fraction(1, 4)]


@pytest.mark.parametrize("kw", [{"shrink": 1}, {"shrink": 0}, {"budget": 0}])
def test_params_validated(kw):
    with pytest.raises(ValueError):
        SearchParams(**kw)


@given(st.integers(4, 40), st.integers(0, 10 ** 6))
def test_random_polyhedron_deterministic(n, seed):
    assert random_polyhedron(n, seed) == random_polyhedron(n, seed)


def test_random_polyhedron_rejects_few_points():
    with pytest.raises(ValueError):
        random_polyhedron(3, 0)


def test_interior_polytope_contains_origin():
    for seed in range(10):
        assert random_interior_polytope(seed).contains_strictly((0, 0, 0))


def test_classify_tetrahedron():
    S, U, ev = classify_tetrahedron([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert S >= 2 and U >= 2 and ev == U
    with pytest.raises(DegenerateInput):
        classify_tetrahedron([(0, 0, 0), (1, 0, 0), (2, 0, 0), (0, 0, 1)])


def test_survey_accounting():
    res = tetrahedron_survey(500, 3)
    assert sum(res.histogram.values()) + res.degeneracies == 500
    assert all(S >= 2 and U >= 2 for S, U in res.histogram)
    assert res.min_equilibrium_vertices >= 2
    d = res.to_dict()
    assert d["trials"] == 500 and d["seed"] == 3


def test_survey_deterministic():
    assert tetrahedron_survey(200, 9).to_dict() == tetrahedron_survey(200, 9).to_dict()


def test_survey_rejects_no_trials():
    with pytest.raises(ValueError):
        tetrahedron_survey(0, 0)


def test_hull_of_survey_tetrahedron_agrees():
    pts = [(3, -1, 2), (-5, 4, 1), (2, 2, -6), (0, -4, -1)]
    S, U, _ = classify_tetrahedron(pts)
    assert analyze(hull_from_points(pts)).cls == (S, U)
