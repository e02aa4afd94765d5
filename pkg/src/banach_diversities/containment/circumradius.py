"""Provides the circumradius R(X, C) of a finite point set with respect to an origin-symmetric polytope.

The circumradius is the smallest λ ≥ 0 such that some translate of X fits inside λ·C. It is computed with a
V-representation containment program: every translated point is written as a nonnegative combination of the signed
generators whose total weight equals λ. The program is linear in (translation, λ, weights), so bodies in any dimension
are handled without a facet description.
"""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from ataraxis_base_utilities import console

from ..geometry import Vector, SymmetricPolytope, gauge, check_dimension
from ..exceptions import NumericalFailureError
from ..optimization import LinearProgram, solve

CONTACT_THRESHOLD: float = 1e-7
"""The relative gap below the radius within which a translated point counts as touching the scaled body."""


@dataclass(frozen=True)
class Contact:
    """Stores a point of the input set that touches the boundary of the optimally scaled and translated body."""

    index: int
    """The index of the touching point in the input point set."""
    gauge: float
    """The gauge of the translated point, equal to the radius within the contact threshold."""


@dataclass(frozen=True, eq=False)
class CircumResult:
    """Stores the circumradius of a point set together with an optimal translation and the touching points."""

    radius: float
    """The circumradius R(X, C)."""
    center: NDArray[np.float64]
    """The translation t such that t + X is contained in radius·C."""
    contacts: tuple[Contact, ...]
    """The points whose translates lie on the boundary of radius·C. Nonempty for sets with at least two points."""
    gauges: NDArray[np.float64]
    """The gauge of every translated point t + p, in input order."""


def as_point_set(points: NDArray[np.float64], body: SymmetricPolytope) -> NDArray[np.float64]:
    """Converts the input point set to a (k, n) array and verifies that it is nonempty and matches the body."""
    array = np.asarray(points, dtype=np.float64)
    if array.size == 0 or array.ndim > 2:  # noqa: PLR2004
        message = (
            f"Unable to compute the circumradius. The point set must be a nonempty (k, n) array, but got an array of "
            f"shape {array.shape}."
        )
        console.error(message=message, error=ValueError)
        raise ValueError(message)  # pragma: no cover
    return check_dimension(points=np.atleast_2d(array), body=body)


def circumradius(
    points: NDArray[np.float64], body: SymmetricPolytope, *, tolerance: float | None = None
) -> CircumResult:
    """Computes the circumradius of the input point set with respect to the input body.

    Notes:
        The program variables are the translation t (free), the radius λ (nonnegative), and one nonnegative weight
        vector w_j per point over the signed generators. The rows enforce t + p_j = Σ_k w_jk·v_k and Σ_k w_jk = λ for
        every point p_j. Minimizing λ yields the circumradius.

        The circumradius is invariant under translations of the point set, absolutely homogeneous of degree 1 in the
        point set, and homogeneous of degree -1 in the body.

    Args:
        points: The (k, n) array of points. A single point may be passed as a one-dimensional array.
        body: The origin-symmetric polytope that acts as the container.
        tolerance: The optional reduced cost tolerance forwarded to the simplex solver.

    Returns:
        The circumradius record with the optimal translation and the contact points.

    Raises:
        DimensionMismatchError: If the point set and the body dimensions do not match.
        ValueError: If the point set is empty.
        NumericalFailureError: If the simplex solver fails.
    """
    points = as_point_set(points=points, body=body)
    count, dimension = points.shape

    # Single points (and repeated copies of one point) need no program.
    if count == 1 or np.all(points == points[0]):
        gauges = np.zeros(count)
        contacts = tuple(Contact(index=index, gauge=0.0) for index in range(count)) if count > 1 else ()
        return CircumResult(radius=0.0, center=-points[0].copy(), contacts=contacts, gauges=gauges)

    vertices = body.vertices()
    vertex_count = vertices.shape[0]
    variable_count = dimension + 1 + count * vertex_count

    # Rows: count blocks of 'dimension' coordinate rows followed by count weight-sum rows.
    matrix = np.zeros((count * dimension + count, variable_count))
    rhs = np.zeros(count * dimension + count)
    for index in range(count):
        columns = slice(dimension + 1 + index * vertex_count, dimension + 1 + (index + 1) * vertex_count)
        rows = slice(index * dimension, (index + 1) * dimension)
        matrix[rows, :dimension] = np.eye(dimension)
        matrix[rows, columns] = -vertices.T
        rhs[rows] = -points[index]

        weight_row = count * dimension + index
        matrix[weight_row, columns] = 1.0
        matrix[weight_row, dimension] = -1.0

    objective = np.zeros(variable_count)
    objective[dimension] = 1.0
    nonnegative = np.ones(variable_count, dtype=np.bool_)
    nonnegative[:dimension] = False

    program = LinearProgram(objective=objective, equality_matrix=matrix, equality_rhs=rhs, nonnegative=nonnegative)
    solution = solve(program) if tolerance is None else solve(program, tolerance=tolerance)
    if not solution.optimal:
        # The program is always feasible and bounded below for full-dimensional bodies.
        message = f"Unable to compute the circumradius. The containment program terminated as '{solution.status}'."
        console.error(message=message, error=NumericalFailureError)
        raise NumericalFailureError(message)  # pragma: no cover

    radius = max(0.0, solution.objective)
    center = solution.primal[:dimension].copy()
    gauges = np.array([gauge(body=body, point=center + point, tolerance=tolerance) for point in points])

    threshold = radius * (1.0 - CONTACT_THRESHOLD)
    touching = np.flatnonzero(gauges >= threshold)
    if touching.size == 0:
        touching = np.array([int(np.argmax(gauges))])
    contacts = tuple(Contact(index=int(index), gauge=float(gauges[index])) for index in touching)

    return CircumResult(radius=radius, center=center, contacts=contacts, gauges=gauges)


def pair_circumradius(first: Vector, second: Vector, body: SymmetricPolytope) -> float:
    """Computes the circumradius of a two-point set, which equals half the gauge of the points' difference.

    Args:
        first: The first point.
        second: The second point.
        body: The origin-symmetric polytope that acts as the container.

    Returns:
        The circumradius of the two-point set.
    """
    first = check_dimension(points=first, body=body)
    second = check_dimension(points=second, body=body)
    return 0.5 * gauge(body=body, point=first - second)
