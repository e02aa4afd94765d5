"""Provides planar polygons, origin-symmetric polytopes, and the gauge (norm) induced by symmetric polytopes."""

from .polygons import Polygon2, hull2d, minkowski_interpolate
from .polytopes import Vector, SymmetricPolytope, gauge, check_dimension, random_symmetric_polytope

__all__ = [
    "Polygon2",
    "SymmetricPolytope",
    "Vector",
    "check_dimension",
    "gauge",
    "hull2d",
    "minkowski_interpolate",
    "random_symmetric_polytope",
]
