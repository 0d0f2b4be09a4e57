"""Witness solids: catalog entries, local manipulations, monostatic solids and the class driver."""
from .catalog import catalog, catalog_classes, pyramid
from .conway import (ConwayParams, conway_solid, mono_unstable_pyramid, tilted_pyramid,
                     twisted_conway)
from .driver import build_class, route
from .manipulations import (Step, erect_tetrahedron, face_truncate, recenter_vertex, truncate_vertex,
                            vertex_build)
from .recipe import Recipe, replay

__all__ = [
    "ConwayParams", "Recipe", "Step", "build_class", "catalog", "catalog_classes", "conway_solid",
    "erect_tetrahedron", "face_truncate", "mono_unstable_pyramid", "pyramid", "recenter_vertex",
    "replay", "route", "tilted_pyramid", "truncate_vertex", "twisted_conway", "vertex_build",
]
