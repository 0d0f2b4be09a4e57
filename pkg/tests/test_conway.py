from dataclasses import replace
from fractions import Fraction

import pytest

from equilib.complexity import complexity_of
from equilib.constructions import ConwayParams, conway_solid, mono_unstable_pyramid, tilted_pyramid, twisted_conway
from equilib.constructions.conway import conway_polygon, polygon_centroid, radii, standing_height
from equilib.equilibria import analyze
from equilib.errors import ClassNotAchieved, ParamsOutOfWindow


@pytest.fixture(scope="module")
def solid():
    return conway_solid()


def test_polygon_is_mirror_symmetric():
    poly = conway_polygon(9)
    assert len(poly) == 17
    pts = set(poly)
    assert all((-x, y) in pts for x, y in poly)
    assert min(y for _, y in poly) == -1


def test_default_solid(solid):
    rep = analyze(solid)
    assert rep.cls == (1, 4)
    assert (solid.f, solid.v) == (19, 34)
    assert complexity_of(solid) == 96
    assert standing_height(solid) < 1


def test_radii_bracket_r0():
    r = radii(9)
    assert r["r1"] < r["r0"] < r["r2"]


def test_too_few_sides():
    with pytest.raises(ParamsOutOfWindow):
        conway_solid(ConwayParams(m=8))
    with pytest.raises(ParamsOutOfWindow):
        conway_solid(ConwayParams(b=-1))


def test_flat_plate_is_not_monostable():
    with pytest.raises(ClassNotAchieved):
        conway_solid(ConwayParams(b=0))


def test_twisted():
    P = twisted_conway()
    assert analyze(P).cls == (1, 4)
    assert (P.f, P.v) == (19, 34)


def test_symmetric_pyramid():
    P = mono_unstable_pyramid()
    assert analyze(P).cls == (3, 1)
    assert complexity_of(P) == 64


def test_asymmetric_pyramid():
    P = mono_unstable_pyramid(symmetric=False)
    assert analyze(P).cls == (2, 1)
    assert complexity_of(P) == 66


def test_apex_over_centre_is_not_mono_unstable():
    x, y = polygon_centroid(ConwayParams())
    with pytest.raises(ClassNotAchieved):
        mono_unstable_pyramid(apex=(x, y, Fraction(1, 20)))


def test_tilted_pyramid_stays_mono_unstable():
    P = tilted_pyramid()
    rep = analyze(P)
    assert rep.U == 1
    assert rep.cls == (3, 1)


def test_params_coerced_to_fractions():
    p = replace(ConwayParams(), a=2)
    assert isinstance(p.a, Fraction)
