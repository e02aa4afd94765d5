"""Provides the constructive witness bodies for Banach-embeddable three-point diversities.

The hexagon witness C₀ spanned by the six boundary points realizes the largest admissible triple value. Smaller triple
values are realized by the Minkowski combinations C(s) = (1 - s)·C₀ ⊕ s·P, where P is a parallelogram formed by two
pairs of hexagon edge lines. Every boundary point of C₀ lies on an edge line of P with the same outer normal, so all
six points stay on the boundary of C(s) and the pair values are preserved. Since C₀ ⊆ P, the family is nested, the
triple value R(S, C(s)) decreases continuously in s, and bisection reaches any target in between.
"""

from enum import StrEnum
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from ataraxis_base_utilities import LogLevel, console

from ..geometry import Polygon2, SymmetricPolytope, hull2d, minkowski_interpolate
from .three_point import (
    ThreePointDiversity,
    decide_banach,
    boundary_points,
    pairwise_feasible,
    reference_triangle,
)
from ..exceptions import BisectionStalledError, TargetOutOfRangeError, PreconditionViolatedError
from ..containment import circumradius, pair_circumradius

WITNESS_TOLERANCE: float = 1e-7
"""The absolute tolerance within which the witness reproduces the target triple value."""

STALL_TOLERANCE: float = 1e-6
"""The largest gap to the target accepted once the bisection exhausts its iterations."""

MAXIMUM_BISECTIONS: int = 200
"""The largest number of bisection steps performed by witness_for_target()."""

_PARALLEL_TOLERANCE: float = 1e-9
"""The relative determinant below which two edge lines are treated as parallel."""


@dataclass(frozen=True)
class HexagonWitness:
    """Stores the hexagon witness of a pairwise feasible three-point diversity."""

    body: SymmetricPolytope
    """The body conv(±q₁, ±q₂, ±q₃) spanned by the boundary points."""
    degenerate: bool
    """Determines whether some boundary point is not extreme (the hexagon collapses to a parallelogram)."""


class SlabPair(StrEnum):
    """Defines the parallelogram orientations used by the witness interpolation.

    The hexagon edges are E1 = [q₁, q₂], E2 = [q₂, -q₃], and E3 = [-q₃, -q₁]. Each orientation intersects the slabs
    bounded by the lines through two of these edges and their mirror images.
    """

    E1_E2 = "e1_e2"
    """Slabs through the edges [q₁, q₂] and [q₂, -q₃]."""
    E1_E3 = "e1_e3"
    """Slabs through the edges [q₁, q₂] and [-q₃, -q₁]."""
    E2_E3 = "e2_e3"
    """Slabs through the edges [q₂, -q₃] and [-q₃, -q₁]."""


@dataclass(frozen=True)
class TargetWitness:
    """Stores a witness body that realizes a requested triple value."""

    body: SymmetricPolytope
    """The witness body."""
    mixing: float
    """The interpolation parameter s of the body (1 - s)·C₀ ⊕ s·P."""
    orientation: SlabPair | None
    """The parallelogram orientation, or None if the hexagon witness was returned."""
    measured: float
    """The circumradius of the reference triangle in the witness body."""


def hexagon_witness(diversity: ThreePointDiversity) -> HexagonWitness:
    """Builds the hexagon witness C₀ = conv of the six boundary points.

    Notes:
        When δ₂₃ sits at an endpoint of its feasible interval, one boundary point falls on the segment joining two
        others and the hexagon collapses to a parallelogram. The collapsed body is still a valid witness and is
        returned with the degenerate flag set.

    Raises:
        PreconditionViolatedError: If the pair values are not pairwise feasible.
    """
    if not pairwise_feasible(diversity):
        message = (
            f"Unable to build the hexagon witness. The pair values {diversity.pairs} violate "
            f"d12 - d13 ≤ d23 ≤ d12 + d13."
        )
        console.error(message=message, error=PreconditionViolatedError)
        raise PreconditionViolatedError(message)  # pragma: no cover

    points = boundary_points(diversity)
    body = SymmetricPolytope(generators=points[::2])
    degenerate = hull2d(points=points).vertex_count < 6  # noqa: PLR2004
    if degenerate:
        console.echo(
            message=(
                f"The hexagon witness for the pair values {diversity.pairs} is degenerate: the pairwise inequalities "
                f"hold with equality and some boundary points are not extreme."
            ),
            level=LogLevel.WARNING,
        )
    return HexagonWitness(body=body, degenerate=degenerate)


def _edge_line(first: NDArray[np.float64], second: NDArray[np.float64]) -> tuple[NDArray[np.float64], float]:
    """Returns the outer normal n and offset h of the line through the input points, so that the line is n·x = h."""
    direction = second - first
    normal = np.array([direction[1], -direction[0]])
    offset = float(normal @ first)
    if offset < 0.0:
        normal, offset = -normal, -offset
    return normal, offset


def parallelogram(diversity: ThreePointDiversity, orientation: SlabPair) -> Polygon2 | None:
    """Builds the parallelogram bounded by the two hexagon edge lines selected by the orientation and their mirror
    images.

    Returns:
        The parallelogram, or None if the two edge lines are parallel (which happens for degenerate hexagons).
    """
    points = boundary_points(diversity)
    first, second, third = points[0], points[2], points[4]
    edges = {
        "e1": (first, second),
        "e2": (second, -third),
        "e3": (-third, -first),
    }
    left, right = orientation.value.split("_")
    first_normal, first_offset = _edge_line(*edges[left])
    second_normal, second_offset = _edge_line(*edges[right])

    matrix = np.vstack((first_normal, second_normal))
    scale = float(np.linalg.norm(first_normal) * np.linalg.norm(second_normal))
    if abs(float(np.linalg.det(matrix))) <= _PARALLEL_TOLERANCE * scale:
        return None

    corners = [
        np.linalg.solve(matrix, np.array([first_sign * first_offset, second_sign * second_offset]))
        for first_sign in (1.0, -1.0)
        for second_sign in (1.0, -1.0)
    ]
    return hull2d(points=np.array(corners))


def _triangle_radius(body: SymmetricPolytope) -> float:
    """Returns the circumradius of the reference triangle in the input body."""
    return circumradius(points=reference_triangle(), body=body).radius


def witness_for_target(
    diversity: ThreePointDiversity, target: float, *, tolerance: float = WITNESS_TOLERANCE
) -> TargetWitness:
    """Builds a body that induces the pair values of the input diversity on the reference triangle and realizes the
    requested triple value.

    Notes:
        All three parallelogram orientations are built. The one with the smallest triangle circumradius is used as the
        far end of the interpolation family, and the mixing parameter is bisected until the measured triple value
        matches the target.

    Args:
        diversity: The canonical three-point diversity. Its triple value is ignored.
        target: The requested triple value. Must lie in the Banach interval of the pair values.
        tolerance: The absolute tolerance of the triple value match.

    Returns:
        The witness record.

    Raises:
        TargetOutOfRangeError: If the target lies outside the Banach interval.
        BisectionStalledError: If the interpolation family does not reach the target within the bisection budget.
    """
    decision = decide_banach(diversity.with_triple(target))
    if not decision.banach:
        message = (
            f"Unable to build the witness body. The target triple value {target} lies outside the Banach interval "
            f"{decision.banach_interval} of the pair values {diversity.pairs}."
        )
        console.error(message=message, error=TargetOutOfRangeError)
        raise TargetOutOfRangeError(message)  # pragma: no cover

    hexagon = hexagon_witness(diversity).body
    upper = _triangle_radius(hexagon)
    if target >= upper - tolerance:
        return TargetWitness(body=hexagon, mixing=0.0, orientation=None, measured=upper)

    candidates = []
    for orientation in SlabPair:
        polygon = parallelogram(diversity, orientation)
        if polygon is not None:
            candidates.append((_triangle_radius(SymmetricPolytope.from_polygon(polygon)), orientation, polygon))
    lower, orientation, far_end = min(candidates, key=lambda candidate: candidate[0])

    if lower > target + STALL_TOLERANCE:
        message = (
            f"Unable to build the witness body. The interpolation family spans triple values [{lower}, {upper}], "
            f"which does not reach the target {target}."
        )
        console.error(message=message, error=BisectionStalledError)
        raise BisectionStalledError(message)  # pragma: no cover
    if lower >= target - tolerance:
        return TargetWitness(
            body=SymmetricPolytope.from_polygon(far_end), mixing=1.0, orientation=orientation, measured=lower
        )

    start = hexagon.to_polygon()
    low_mixing, high_mixing = 0.0, 1.0
    best = (1.0, SymmetricPolytope.from_polygon(far_end), lower)
    for _ in range(MAXIMUM_BISECTIONS):
        mixing = 0.5 * (low_mixing + high_mixing)
        body = SymmetricPolytope.from_polygon(minkowski_interpolate(first=start, second=far_end, mixing=mixing))
        measured = _triangle_radius(body)
        if abs(measured - target) < abs(best[2] - target):
            best = (mixing, body, measured)
        if abs(measured - target) <= tolerance:
            break
        if measured > target:
            low_mixing = mixing
        else:
            high_mixing = mixing

    mixing, body, measured = best
    if abs(measured - target) > STALL_TOLERANCE:
        message = (
            f"Unable to build the witness body. The bisection stalled after {MAXIMUM_BISECTIONS} steps at the triple "
            f"value {measured}, which misses the target {target} by more than {STALL_TOLERANCE}."
        )
        console.error(message=message, error=BisectionStalledError)
        raise BisectionStalledError(message)  # pragma: no cover
    return TargetWitness(body=body, mixing=mixing, orientation=orientation, measured=measured)


def witness_points(diversity: ThreePointDiversity) -> NDArray[np.float64]:
    """Returns the reference triangle vertices in the original label order of the input diversity."""
    return diversity.to_original_order(reference_triangle())


def measure_triangle(points: NDArray[np.float64], body: SymmetricPolytope) -> tuple[float, float, float, float]:
    """Measures the induced values (δ₁₂, δ₁₃, δ₂₃, δ₁₂₃) of three points in the input body, in point order."""
    first, second, third = np.asarray(points, dtype=np.float64)
    return (
        pair_circumradius(first=first, second=second, body=body),
        pair_circumradius(first=first, second=third, body=body),
        pair_circumradius(first=second, second=third, body=body),
        circumradius(points=np.array([first, second, third]), body=body).radius,
    )
