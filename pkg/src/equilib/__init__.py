"""Exact static-equilibrium analysis and witness constructions for convex polyhedra."""
__version__ = "0.1.0"
