from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from equilib.equilibria import analyze
from equilib.errors import ParseError
from equilib.geometry import cube, hull_from_points
from equilib.off import (LOSSY_FLAG, content_hash, emit_off, parse_off, polyhedron_hash, read_off,
                         write_off)

TETRA = """OFF
4 4 6
0 0 0
1 0 0
0 1 0
0 0 1
3 0 2 1
3 0 1 3
3 0 3 2
3 1 2 3
"""


def test_minimal():
    P = parse_off(TETRA)
    assert (P.v, P.f) == (4, 4)
    assert P.vertices[1] == (1, 0, 0)


def test_counts_on_header_line_and_comments():
    text = "OFF 4 4 6  # counts here\n# a comment\n" + "\n".join(TETRA.splitlines()[2:]) + "\n"
    assert parse_off(text) == parse_off(TETRA)


def test_fractions_and_decimals_are_exact():
    text = TETRA.replace("1 0 0\n", "16/5 0 0\n", 1).replace("0 1 0\n", "0 0.1 0\n", 1)
    P = parse_off(text)
    assert P.vertices[1][0] == Fraction(16, 5)
    assert P.vertices[2][1] == Fraction(1, 10)


def test_colour_tokens_ignored():
    text = TETRA.replace("3 1 2 3\n", "3 1 2 3 255 0 0\n")
    assert parse_off(text).faces[-1] == (1, 2, 3)


@pytest.mark.parametrize("text,line,column", [
    ("", 1, None),
    ("OFFX\n", 1, 1),
    ("OFF\n4 4\n0 0 0\n", 3, None),
    (TETRA.replace("0 0 1\n", "0 0 x\n"), 6, 5),
    (TETRA.replace("0 0 1\n", "0 0 1/0\n"), 6, 5),
    (TETRA.replace("3 1 2 3\n", "3 1 2 9\n"), 10, 7),
    (TETRA.replace("3 1 2 3\n", "3 1 2\n"), 10, None),
    (TETRA + "extra\n", 11, 1),
])
def test_parse_errors(text, line, column):
    with pytest.raises(ParseError) as err:
        parse_off(text)
    assert err.value.line == line
    if column is not None:
        assert err.value.column == column


coord = st.fractions(min_value=-10, max_value=10, max_denominator=1000)


@given(st.lists(st.tuples(coord, coord, coord), min_size=4, max_size=12, unique=True))
def test_round_trip(pts):
    try:
        P = hull_from_points(pts, "t")
    except Exception:
        return
    Q = parse_off(emit_off(P), "t")
    assert Q == P
    assert polyhedron_hash(Q) == polyhedron_hash(P)


def test_decimal_output_is_marked_lossy():
    P = hull_from_points([(0, 0, 0), (Fraction(1, 3), 0, 0), (0, 1, 0), (0, 0, 1)])
    text = emit_off(P, decimal=True)
    assert LOSSY_FLAG in text
    assert "0.333333333333" in text
    assert parse_off(text) != P


def test_hash_ignores_name():
    a = cube()
    b = hull_from_points(a.vertices, "other")
    assert polyhedron_hash(a) == polyhedron_hash(b)
    assert content_hash(emit_off(a)) != content_hash(emit_off(b))


def test_file_helpers(tmp_path):
    path = tmp_path / "c.off"
    write_off(path, cube())
    assert read_off(path, "cube") == cube()


def test_fixture_files(fixtures):
    paths = sorted(fixtures.glob("*.off"))
    assert len(paths) == 14
    for path in paths:
        digits = path.stem.split("_")[1]
        assert analyze(read_off(path)).cls == (int(digits[0]), int(digits[1]))
