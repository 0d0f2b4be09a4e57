import pytest

from equilib.complexity import R_closed, complexity_of
from equilib.constructions import Recipe, build_class, replay, route
from equilib.constructions.manipulations import Step
from equilib.constructions.recipe import load, save
from equilib.equilibria import analyze
from equilib.errors import ClassNotAchieved, ParseError, ReplayMismatch, Unsupported
from equilib.off import polyhedron_hash


@pytest.mark.parametrize("S,U,kind", [
    (5, 5, "pyramid"), (6, 8, "truncate"), (8, 6, "erect"), (2, 3, "catalog"), (5, 12, "face_truncate"),
    (8, 4, "vertex_build"), (1, 5, "monostable"), (4, 1, "monounstable"),
])
def test_routes(S, U, kind):
    assert route(S, U) == kind


def test_polar_route_flag():
    assert route(8, 5, polar=True) == "polar"
    assert route(5, 12, polar=True) == "face_truncate"


@pytest.mark.parametrize("cls", [(1, 1), (1, 2), (1, 3)])
def test_unsupported(cls):
    with pytest.raises(Unsupported):
        build_class(*cls)


@pytest.mark.parametrize("S,U", [(7, 10), (5, 12), (2, 2), (12, 5), (3, 8), (7, 3)])
def test_build_reaches_lower_bound(S, U):
    P, recipe = build_class(S, U)
    assert analyze(P).cls == (S, U)
    assert complexity_of(P) == 2 * R_closed(S, U)
    assert recipe.target == (S, U)
    assert recipe.hash == polyhedron_hash(P)


def test_recipe_text_round_trip():
    P, recipe = build_class(7, 10)
    again = Recipe.loads(recipe.dumps())
    assert again == recipe
    assert polyhedron_hash(replay(again)) == recipe.hash


def test_recipe_file_round_trip(tmp_path):
    _, recipe = build_class(5, 8)
    path = tmp_path / "r.recipe"
    save(path, recipe)
    assert load(path) == recipe


def test_replay_detects_tampering():
    _, recipe = build_class(6, 8)
    recipe.hash = "sha256:" + "0" * 64
    with pytest.raises(ReplayMismatch):
        replay(recipe)


def test_replay_detects_wrong_target():
    _, recipe = build_class(6, 8)
    recipe.target = (6, 9)
    recipe.hash = None
    with pytest.raises(ClassNotAchieved):
        replay(recipe)
    replay(recipe, verify=False)


@pytest.mark.parametrize("text,line", [
    ("", 1),
    ("TARGET 1,2\n", 1),
    ("BASE nowhere\n", 1),
    ("BASE pyramid S=5\nSTEP fold site=1 params=2\n", 2),
    ("BASE pyramid S=5\n\nSTEP truncate_vertex site=x params=1\n", 3),
    ("BASE pyramid S=5\nTARGET five\n", 2),
    ("BASE pyramid S=5\nSTEP truncate_vertex params=1\n", 2),
    ("BASE pyramid S=1/0\n", 1),
    ("BASE pyramid S=5\nWHAT\n", 2),
])
def test_recipe_parse_errors(text, line):
    with pytest.raises(ParseError) as err:
        Recipe.loads(text)
    assert err.value.line == line


def test_recipe_add():
    r = Recipe("pyramid", {"S": 5}).add(Step("truncate_vertex", (0,), (1, 0, 0, 0)))
    assert len(r.steps) == 1


def test_polar_route():
    P, recipe = build_class(8, 5, polar=True)
    assert analyze(P).cls == (8, 5)
    assert complexity_of(P) == 2
    assert any(st.name == "polar" for st in recipe.steps)
    assert polyhedron_hash(replay(recipe)) == recipe.hash


def test_shipped_recipes_replay(recipes_dir):
    paths = sorted(recipes_dir.glob("*.recipe"))
    assert len(paths) >= 10
    for path in paths:
        recipe = load(path)
        P = replay(recipe)
        assert analyze(P).cls == recipe.target
