"""Route an equilibrium class ``(S, U)`` to a witness solid and its recipe.

Routing, for ``S, U >= 2``:

* ``S = U >= 4``: pyramid over a regular ``(S-1)``-gon;
* other polyhedral pairs: a pyramid followed by vertex truncations
  (``U > S``) or erected tetrahedra (``S > U``);
* small non-pairs: the fixed tetrahedra and pentahedra of the catalog;
* ``U > 2S - 4``: a simple witness in ``(S, 2S-4)`` (or a catalog
  tetrahedron when ``S < 4``) followed by face truncations, with one
  one-sided truncation when ``U`` is odd;
* ``S > 2U - 4``: vertex builds from a triangulated ``(2U-4, U)`` witness
  (even ``S``) or from a zero-excess ``(2U-5, U)`` solid or catalog
  pentahedron (odd ``S``); optionally the polar dual of the ``(U, S)``
  witness re-centred numerically.

Monostatic rows start from the prism and pyramid solids in ``conway``.
"""
from __future__ import annotations

import logging
from fractions import Fraction

import numpy as np

from ..complexity import R_closed, complexity_of, is_polyhedral_pair
from ..equilibria import Kind, analyze
from ..errors import (BadSite, ClassNotAchieved, ConditionViolated, DegenerateEquilibria, EquilibError,
                      NoConvergence, Unsupported)
from ..geometry import Polyhedron, santalo_point
from ..off import polyhedron_hash
from ..search import SearchParams
from .catalog import catalog_classes
from .manipulations import (erect_tetrahedron, face_truncate, face_truncate_sites, recenter_vertex,
                            truncate_vertex, vertex_build, vertex_build_sites, _q)
from .recipe import Recipe, apply_move_vertex, apply_polar, build_base, replay
from .manipulations import Step

log = logging.getLogger(__name__)

_RECOVERABLE = (ClassNotAchieved, ConditionViolated, BadSite, DegenerateEquilibria, NoConvergence)
MAX_SITES = 12


class _Chain:
    """A polyhedron together with the recipe that produced it."""

    def __init__(self, base: str, **args):
        self.recipe = Recipe(base, {k: Fraction(v) for k, v in args.items()})
        self.P = build_base(base, self.recipe.base_args)

    @property
    def cls(self):
        return analyze(self.P).cls

    def _try(self, attempts, what: str):
        last = None
        for n, (fn, args, kw) in enumerate(attempts):
            if n >= MAX_SITES:
                break
            try:
                P, step = fn(self.P, *args, return_step=True, **kw)
            except _RECOVERABLE as exc:
                log.debug("%s at %s failed: %s", what, args, exc)
                last = exc
                continue
            self.P = P
            self.recipe.add(step)
            return self
        raise ClassNotAchieved(f"{what}: no admissible site succeeded from class {self.cls}"
                               + (f" (last error: {last})" if last else ""), self.cls)

    def truncate_vertex(self, params):
        sites = [q for q in range(self.P.v) if self.P.degree(q) == 3]
        # newest vertices last in canonical order is not guaranteed; try them all
        return self._try([(truncate_vertex, (q, params), {}) for q in sites], "truncate_vertex")

    def erect_tetrahedron(self, params):
        rep = analyze(self.P)
        sites = [F for F, face in enumerate(self.P.faces) if len(face) == 3 and rep.faces[F] == Kind.STABLE]
        return self._try([(erect_tetrahedron, (F, params), {}) for F in sites], "erect_tetrahedron")

    def face_truncate(self, params, one_sided=False):
        sites = face_truncate_sites(self.P, one_sided)
        return self._try([(face_truncate, (F, seq, params), {"one_sided": one_sided}) for F, seq in sites],
                         "face_truncate" + ("_one_sided" if one_sided else ""))

    def vertex_build(self, params, one_sided=False):
        sites = vertex_build_sites(self.P)
        return self._try([(vertex_build, (F, tri, params), {"one_sided": one_sided}) for F, tri in sites],
                         "vertex_build" + ("_one_sided" if one_sided else ""))

    def finish(self, target) -> tuple[Polyhedron, Recipe]:
        got = analyze(self.P).cls
        if got != tuple(target):
            raise ClassNotAchieved(f"route for {target} ended in {got}", got)
        self.recipe.target = tuple(target)
        self.recipe.hash = polyhedron_hash(self.P)
        return self.P, self.recipe


# ----------------------------------------------------------------- routes

def _pyramid_chain(S0: int) -> _Chain:
    if S0 == 4:
        return _Chain("regular_tetrahedron")
    return _Chain("pyramid", S=S0)


def _simple_witness(S: int, params) -> _Chain:
    """``(S, 2S-4)`` with every vertex of degree 3 (or a catalog tetrahedron for ``S < 4``)."""
    if S < 4:
        return _Chain("catalog", S=S, U=4)
    ch = _pyramid_chain(4)
    for _ in range(S - 4):
        ch.truncate_vertex(params)
    return ch


def _simple_dual_witness(U: int, params) -> _Chain:
    """``(2U-4, U)`` with every face a triangle (or a catalog tetrahedron for ``U < 4``).

    For ``U = 4`` the pyramid is used instead of the regular tetrahedron:
    on a regular face the vertex, the stable point and every edge foot
    line up, which rules out the vertex build.
    """
    if U < 4:
        return _Chain("catalog", S=4, U=U)
    ch = _Chain("pyramid", S=4)
    for _ in range(U - 4):
        ch.erect_tetrahedron(params)
    return ch


def _odd_dual_witness(U: int, params) -> _Chain:
    """Zero-excess start for odd ``S``: a catalog pentahedron, or the minimal ``(2U-5, U)`` solid."""
    if U < 5:
        return _Chain("catalog", S=5, U=U)
    ch = _Chain("pyramid", S=5)
    for _ in range(U - 5):
        ch.erect_tetrahedron(params)
    return ch


def _case3(S: int, U: int, params) -> _Chain:
    ch = _simple_witness(S, params)
    U0 = 4 if S < 4 else 2 * S - 4
    for _ in range((U - U0) // 2):
        ch.face_truncate(params)
    if (U - U0) % 2:
        ch.face_truncate(params, one_sided=True)
    return ch


def _case4(S: int, U: int, params) -> _Chain:
    # the one-sided build costs two more than a full one, so odd S starts
    # from an odd witness instead of finishing with it
    if S % 2:
        ch = _odd_dual_witness(U, params)
        S0 = 5 if U < 5 else 2 * U - 5
    else:
        ch = _simple_dual_witness(U, params)
        S0 = 4 if U < 4 else 2 * U - 4
    for _ in range((S - S0) // 2):
        ch.vertex_build(params)
    return ch


def _case4_polar(S: int, U: int, params, grid: int = 2 ** 48) -> _Chain:
    """Polar dual of the ``(U, S)`` witness.

    The pole is the Santalo point ``s`` of the witness, where the polar body
    has its centre of mass at ``s``; polarity swaps the sites with respect
    to ``s``, so the dual lands in ``(S, U)`` once ``s`` is rounded.  If the
    rounding matters, one vertex of the dual is re-centred numerically.
    """
    ch = _case3(U, S, params)
    Q = ch.P
    diam = float(Q.bbox_extent())
    den = grid * 2 ** max(0, int(-np.log2(diam)))
    o = tuple(_q(x, den) for x in santalo_point(Q))
    if analyze(Q, o).cls != (U, S):
        raise ClassNotAchieved(f"witness for {(U, S)} changes class when seen from its Santalo point",
                               analyze(Q, o).cls)
    D = apply_polar(Q, (), o)
    ch.recipe.add(Step("polar", (), o))
    if analyze(D).cls == (S, U):
        ch.P = D
        return ch
    last = None
    for q in range(D.v):
        try:
            Qf = recenter_vertex(D, q, o)
            point = tuple(_q(x, den) for x in Qf.vertices[q])
            P = apply_move_vertex(D, (q,), point)
            if analyze(P).cls == (S, U):
                ch.P = P
                ch.recipe.add(Step("move_vertex", (q,), point))
                return ch
        except EquilibError as exc:
            last = exc
    raise ClassNotAchieved(f"polar route for {(S, U)} found no recentrable vertex ({last})")


def _mono_stable(U: int, params) -> _Chain:
    if U == 4:
        return _Chain("conway")
    ch = _Chain("twisted_conway", tau=Fraction(1, 256))
    for _ in range((U - 4) // 2):
        ch.face_truncate(params)
    if U % 2:
        ch.face_truncate(params, one_sided=True)
    return ch


def _mono_unstable(S: int, params) -> _Chain:
    if S == 3:
        return _Chain("mono_pyramid", symmetric=1)
    if S == 2:
        return _Chain("mono_pyramid", symmetric=0)
    ch = _Chain("tilted_pyramid", t=Fraction(1, 1024))
    if S % 2 == 0:
        ch.vertex_build(params, one_sided=True)
    for _ in range((S - 3) // 2):
        ch.vertex_build(params)
    return ch


def route(S: int, U: int, polar: bool = False) -> str:
    """Name of the construction route used for ``(S, U)``."""
    if S < 1 or U < 1:
        raise ValueError("S and U must be positive")
    if S == 1 and U < 4:
        raise Unsupported(f"class {(S, U)} is not constructed (no mono-stable witness with U < 4)")
    if S == 1:
        return "monostable"
    if U == 1:
        return "monounstable"
    if S == U >= 4:
        return "pyramid"
    if is_polyhedral_pair(S, U):
        return "truncate" if U > S else "erect"
    if (S, U) in catalog_classes():
        return "catalog"
    if U > 2 * S - 4:
        return "face_truncate"
    return "polar" if polar else "vertex_build"


def build_class(S: int, U: int, polar: bool = False,
                params: SearchParams = SearchParams()) -> tuple[Polyhedron, Recipe]:
    """Witness polyhedron in class ``(S, U)`` plus the recipe that rebuilds it.

    For ``S, U >= 2`` the witness has complexity ``2 R(S, U)``.
    """
    kind = route(S, U, polar)
    if kind == "pyramid":
        ch = _pyramid_chain(S)
    elif kind == "truncate":
        ch = _pyramid_chain(2 * S - U)
        for _ in range(U - S):
            ch.truncate_vertex(params)
    elif kind == "erect":
        ch = _pyramid_chain(2 * U - S)
        for _ in range(S - U):
            ch.erect_tetrahedron(params)
    elif kind == "catalog":
        ch = _Chain("catalog", S=S, U=U)
    elif kind == "face_truncate":
        ch = _case3(S, U, params)
    elif kind == "vertex_build":
        ch = _case4(S, U, params)
    elif kind == "polar":
        ch = _case4_polar(S, U, params)
    elif kind == "monostable":
        ch = _mono_stable(U, params)
    else:
        ch = _mono_unstable(S, params)
    P, recipe = ch.finish((S, U))
    if S >= 2 and U >= 2:
        C = complexity_of(P)
        if C != 2 * R_closed(S, U):
            raise ClassNotAchieved(f"witness for {(S, U)} has complexity {C}, "
                                   f"expected {2 * R_closed(S, U)}", (S, U))
    return P, recipe


__all__ = ["build_class", "route", "replay"]
