"""Provides planar convex polygons, the monotone chain convex hull, and Minkowski interpolation between polygons."""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from ataraxis_base_utilities import console

from ..exceptions import DegenerateInputError

GEOMETRY_TOLERANCE: float = 1e-9
"""The relative tolerance of geometric predicates. Cross products are compared against this value multiplied by the
squared coordinate magnitude of the input."""


def _cross(origin: NDArray[np.float64], first: NDArray[np.float64], second: NDArray[np.float64]) -> float:
    """Returns the z-component of (first - origin) × (second - origin)."""
    return float(
        (first[0] - origin[0]) * (second[1] - origin[1]) - (first[1] - origin[1]) * (second[0] - origin[0])
    )


@dataclass(frozen=True, eq=False)
class Polygon2:
    """Stores a convex polygon in the plane as its vertices in counterclockwise order.

    Notes:
        The vertices must be in strictly convex position: every consecutive vertex triple turns left. The first vertex
        is not repeated at the end of the array. Use hull2d() to build instances from arbitrary point clouds.
    """

    vertices: NDArray[np.float64]
    """The (k, 2) array of polygon vertices in counterclockwise order."""

    def __post_init__(self) -> None:
        """Verifies that the vertices describe a strictly convex, counterclockwise polygon."""
        vertices = np.array(self.vertices, dtype=np.float64)
        if vertices.ndim != 2 or vertices.shape[1] != 2 or vertices.shape[0] < 3:  # noqa: PLR2004
            message = (
                f"Unable to construct the Polygon2 instance. Expected a (k, 2) vertex array with k ≥ 3, but got an "
                f"array of shape {vertices.shape}."
            )
            console.error(message=message, error=DegenerateInputError)
            raise DegenerateInputError(message)  # pragma: no cover

        following = np.roll(vertices, -1, axis=0)
        after = np.roll(vertices, -2, axis=0)
        turns = (following[:, 0] - vertices[:, 0]) * (after[:, 1] - vertices[:, 1]) - (
            following[:, 1] - vertices[:, 1]
        ) * (after[:, 0] - vertices[:, 0])
        if not np.all(np.isfinite(vertices)) or np.any(turns <= 0.0):
            message = (
                "Unable to construct the Polygon2 instance. The vertices are not finite, strictly convex, and "
                "counterclockwise."
            )
            console.error(message=message, error=DegenerateInputError)
            raise DegenerateInputError(message)  # pragma: no cover

        vertices.setflags(write=False)
        object.__setattr__(self, "vertices", vertices)

    @property
    def vertex_count(self) -> int:
        """Returns the number of polygon vertices."""
        return int(self.vertices.shape[0])

    def contains(self, point: NDArray[np.float64], tolerance: float = GEOMETRY_TOLERANCE) -> bool:
        """Determines whether the input point lies inside or on the boundary of the polygon.

        Args:
            point: The point to test.
            tolerance: The relative tolerance applied to the edge half-plane tests.

        Returns:
            True if the point lies in the polygon, within tolerance.
        """
        point = np.asarray(point, dtype=np.float64)
        edges = np.roll(self.vertices, -1, axis=0) - self.vertices
        offsets = point - self.vertices
        sides = edges[:, 0] * offsets[:, 1] - edges[:, 1] * offsets[:, 0]
        scale = max(1.0, float(np.abs(self.vertices).max()), float(np.abs(point).max()))
        return bool(np.all(sides >= -tolerance * scale**2))

    def scaled(self, factor: float) -> "Polygon2":
        """Returns the polygon scaled about the origin by the input positive factor."""
        if factor <= 0.0:
            message = f"Unable to scale the polygon. The scaling factor must be positive, but got {factor}."
            console.error(message=message, error=ValueError)
            raise ValueError(message)  # pragma: no cover
        return Polygon2(vertices=self.vertices * factor)


def hull2d(points: NDArray[np.float64]) -> Polygon2:
    """Computes the convex hull of the input planar points with the monotone chain algorithm.

    Notes:
        Points lying on hull edges (collinear within tolerance) and duplicate points are dropped, so the returned
        polygon is in strictly convex position. The returned vertices start at the lexicographically smallest point
        and run counterclockwise.

    Args:
        points: The (k, 2) array of input points.

    Returns:
        The convex hull polygon.

    Raises:
        DegenerateInputError: If fewer than three distinct points are provided or all points are collinear.
    """
    points = np.asarray(points, dtype=np.float64)
    planar = points.ndim == 2 and points.shape[1] == 2  # noqa: PLR2004
    if not planar or points.shape[0] < 3 or not np.all(np.isfinite(points)):  # noqa: PLR2004
        message = (
            f"Unable to compute the convex hull. Expected at least 3 finite planar points, but got an array of shape "
            f"{points.shape}."
        )
        console.error(message=message, error=DegenerateInputError)
        raise DegenerateInputError(message)  # pragma: no cover

    scale = max(float(np.abs(points).max()), np.finfo(np.float64).tiny)
    threshold = GEOMETRY_TOLERANCE * scale**2
    ordered = points[np.lexsort((points[:, 1], points[:, 0]))]

    lower: list[NDArray[np.float64]] = []
    for point in ordered:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], point) <= threshold:  # noqa: PLR2004
            lower.pop()
        lower.append(point)

    upper: list[NDArray[np.float64]] = []
    for point in ordered[::-1]:
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], point) <= threshold:  # noqa: PLR2004
            upper.pop()
        upper.append(point)

    vertices = lower[:-1] + upper[:-1]
    if len(vertices) < 3:  # noqa: PLR2004
        message = (
            f"Unable to compute the convex hull. The {points.shape[0]} input points are collinear or contain fewer "
            f"than 3 distinct points."
        )
        console.error(message=message, error=DegenerateInputError)
        raise DegenerateInputError(message)  # pragma: no cover

    return Polygon2(vertices=np.array(vertices))


def minkowski_interpolate(first: Polygon2, second: Polygon2, mixing: float) -> Polygon2:
    """Computes the Minkowski combination (1 - mixing)·first ⊕ mixing·second of two convex polygons.

    The combination is the convex hull of all pairwise sums of scaled vertices. At mixing 0 it returns the first
    polygon and at mixing 1 the second.

    Args:
        first: The polygon weighted by (1 - mixing).
        second: The polygon weighted by mixing.
        mixing: The interpolation parameter in [0, 1].

    Returns:
        The interpolated polygon.

    Raises:
        ValueError: If the mixing parameter lies outside [0, 1].
    """
    if not 0.0 <= mixing <= 1.0:
        message = f"Unable to interpolate the polygons. The mixing parameter must lie in [0, 1], but got {mixing}."
        console.error(message=message, error=ValueError)
        raise ValueError(message)  # pragma: no cover

    sums = (1.0 - mixing) * first.vertices[:, np.newaxis, :] + mixing * second.vertices[np.newaxis, :, :]
    return hull2d(points=sums.reshape(-1, 2))
