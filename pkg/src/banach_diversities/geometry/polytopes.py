"""Provides the centrally symmetric polytope representation and the gauge (Minkowski functional) of such polytopes."""

from typing import Any
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from ataraxis_base_utilities import console

from .polygons import Polygon2, hull2d
from ..exceptions import DegenerateBodyError, DimensionMismatchError
from ..optimization import LinearProgram, solve

Vector = NDArray[np.float64]
"""The type of points and directions: a one-dimensional float64 array of finite coordinates."""

DEDUPLICATION_TOLERANCE: float = 1e-9
"""The relative distance below which two generators (or a generator and the negation of another) are merged."""


@dataclass(frozen=True, eq=False)
class SymmetricPolytope:
    """Stores a full-dimensional, origin-symmetric convex polytope as conv(±g₁, …, ±g_m).

    Notes:
        Only one representative of every ±pair is stored. Consumers that need the full vertex set expand the signs on
        demand with vertices(). Generators that are not extreme points of the body are allowed: the body is defined by
        the convex hull, not by the generator list.

        Generators that coincide up to sign (within tolerance) are merged during construction.
    """

    generators: NDArray[np.float64]
    """The (m, n) array of generator representatives."""

    def __post_init__(self) -> None:
        """Validates, deduplicates, and freezes the generator array."""
        generators = np.atleast_2d(np.asarray(self.generators, dtype=np.float64))
        if generators.ndim != 2 or generators.shape[0] == 0 or not np.all(np.isfinite(generators)):  # noqa: PLR2004
            message = (
                f"Unable to construct the SymmetricPolytope instance. Expected a nonempty (m, n) array of finite "
                f"generators, but got an array of shape {generators.shape}."
            )
            console.error(message=message, error=DegenerateBodyError)
            raise DegenerateBodyError(message)  # pragma: no cover

        norms = np.linalg.norm(generators, axis=1)
        scale = float(norms.max())
        if np.any(norms <= DEDUPLICATION_TOLERANCE * max(1.0, scale)):
            message = "Unable to construct the SymmetricPolytope instance. The generators include the zero vector."
            console.error(message=message, error=DegenerateBodyError)
            raise DegenerateBodyError(message)  # pragma: no cover

        kept: list[NDArray[np.float64]] = []
        for generator in generators:
            duplicate = any(
                min(np.linalg.norm(generator - other), np.linalg.norm(generator + other))
                <= DEDUPLICATION_TOLERANCE * scale
                for other in kept
            )
            if not duplicate:
                kept.append(generator)
        unique = np.array(kept)

        dimension = unique.shape[1]
        if np.linalg.matrix_rank(unique, tol=DEDUPLICATION_TOLERANCE * scale) < dimension:
            message = (
                f"Unable to construct the SymmetricPolytope instance. The {unique.shape[0]} generators do not span "
                f"R^{dimension}, so the body would not be full-dimensional."
            )
            console.error(message=message, error=DegenerateBodyError)
            raise DegenerateBodyError(message)  # pragma: no cover

        unique.setflags(write=False)
        object.__setattr__(self, "generators", unique)

    @property
    def dim(self) -> int:
        """Returns the dimension of the ambient space."""
        return int(self.generators.shape[1])

    def vertices(self) -> NDArray[np.float64]:
        """Returns the (2m, n) array of signed generators: the positive representatives followed by their negations."""
        return np.vstack((self.generators, -self.generators))

    def scaled(self, factor: float) -> "SymmetricPolytope":
        """Returns the body scaled about the origin by the input positive factor."""
        if factor <= 0.0:
            message = f"Unable to scale the symmetric polytope. The scaling factor must be positive, but got {factor}."
            console.error(message=message, error=ValueError)
            raise ValueError(message)  # pragma: no cover
        return SymmetricPolytope(generators=self.generators * factor)

    def contains(self, point: Vector, tolerance: float = DEDUPLICATION_TOLERANCE) -> bool:
        """Determines whether the input point lies in the body, within the given relative tolerance."""
        return gauge(body=self, point=point) <= 1.0 + tolerance

    def to_polygon(self) -> Polygon2:
        """Returns the planar body as a convex polygon. Only two-dimensional bodies support this conversion."""
        if self.dim != 2:  # noqa: PLR2004
            message = f"Unable to convert the symmetric polytope to a polygon. The body is {self.dim}-dimensional."
            console.error(message=message, error=DimensionMismatchError)
            raise DimensionMismatchError(message)  # pragma: no cover
        return hull2d(points=self.vertices())

    @classmethod
    def from_polygon(cls, polygon: Polygon2) -> "SymmetricPolytope":
        """Builds the symmetric polytope conv(P ∪ -P) from the input polygon.

        For a polygon that is already origin-symmetric, the result is the polygon itself.
        """
        return cls(generators=polygon.vertices)

    def to_dict(self) -> dict[str, Any]:
        """Returns the JSON-compatible description {"dim": n, "generators": [[...], ...]} of the body."""
        return {"dim": self.dim, "generators": self.generators.tolist()}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "SymmetricPolytope":
        """Builds the body from its JSON-compatible description.

        Raises:
            DimensionMismatchError: If the declared dimension does not match the generator coordinates.
        """
        generators = np.asarray(data["generators"], dtype=np.float64)
        declared = int(data.get("dim", generators.shape[-1]))
        if generators.ndim != 2 or generators.shape[1] != declared:  # noqa: PLR2004
            message = (
                f"Unable to load the symmetric polytope. The declared dimension is {declared}, but the generators "
                f"array has shape {generators.shape}."
            )
            console.error(message=message, error=DimensionMismatchError)
            raise DimensionMismatchError(message)  # pragma: no cover
        return cls(generators=generators)


def check_dimension(points: NDArray[np.float64], body: SymmetricPolytope) -> NDArray[np.float64]:
    """Converts the input point (or point set) to a float64 array and verifies that it matches the body's dimension.

    Returns:
        The converted array.

    Raises:
        DimensionMismatchError: If the trailing dimension of the input does not match the body.
    """
    array = np.asarray(points, dtype=np.float64)
    if array.ndim == 0 or array.shape[-1] != body.dim:
        message = (
            f"Unable to evaluate the input against the symmetric polytope. The input has shape {array.shape}, but the "
            f"body is {body.dim}-dimensional."
        )
        console.error(message=message, error=DimensionMismatchError)
        raise DimensionMismatchError(message)  # pragma: no cover
    if not np.all(np.isfinite(array)):
        message = "Unable to evaluate the input against the symmetric polytope. All coordinates must be finite."
        console.error(message=message, error=ValueError)
        raise ValueError(message)  # pragma: no cover
    return array


def gauge(body: SymmetricPolytope, point: Vector, *, tolerance: float | None = None) -> float:
    """Computes the gauge of the input point with respect to the body: the smallest λ ≥ 0 such that the point lies in λ
    times the body.

    Notes:
        The gauge is the optimal value of the linear program that minimizes the total weight of a nonnegative
        combination of the signed generators representing the point. For symmetric bodies, the gauge is a norm, so it
        is absolutely homogeneous and symmetric.

    Args:
        body: The symmetric polytope that acts as the unit ball.
        point: The point to evaluate.
        tolerance: The optional reduced cost tolerance forwarded to the simplex solver.

    Returns:
        The gauge value.

    Raises:
        DimensionMismatchError: If the point and the body dimensions do not match.
    """
    point = check_dimension(points=point, body=body).reshape(-1)
    if not np.any(point):
        return 0.0

    vertices = body.vertices()
    program = LinearProgram(
        objective=np.ones(vertices.shape[0]), equality_matrix=vertices.T, equality_rhs=point
    )
    solution = solve(program) if tolerance is None else solve(program, tolerance=tolerance)
    return solution.objective


def random_symmetric_polytope(
    generator: np.random.Generator, dimension: int, generator_count: int | None = None
) -> SymmetricPolytope:
    """Samples a random full-dimensional symmetric polytope whose generators are drawn from the standard Gaussian.

    Args:
        generator: The random number generator to draw from.
        dimension: The dimension of the sampled body.
        generator_count: The number of generator representatives. If None, draws a count between 2·dimension + 2 and
            4·dimension + 4 (8 to 16 in dimension 3).

    Returns:
        The sampled body.
    """
    if generator_count is None:
        generator_count = int(generator.integers(2 * dimension + 2, 4 * dimension + 5))
    while True:
        generators = generator.standard_normal((max(generator_count, dimension), dimension))
        # Rank-deficient draws have probability zero but are redrawn rather than raised.
        if np.linalg.matrix_rank(generators) == dimension:
            return SymmetricPolytope(generators=generators)
