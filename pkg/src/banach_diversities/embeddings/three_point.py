"""Provides the decision procedures and closed-form constructions for embedding three-point diversities.

A three-point diversity is determined by its pair values δ₁₂, δ₁₃, δ₂₃ and its triple value δ₁₂₃. It is induced by
some symmetric body (Minkowski- or Banach-embeddable) exactly when:

    - δ₁₂ - δ₁₃ ≤ δ₂₃ ≤ δ₁₂ + δ₁₃ (after ordering the labels so that δ₁₃ ≤ δ₁₂),
    - max δᵢⱼ ≤ δ₁₂₃,
    - δ₁₂₃ ≤ 4·δ₁₂·δ₁₃·δ₂₃ / Q, where Q = 2δ₁₂δ₁₃ + 2δ₁₂δ₂₃ + 2δ₁₃δ₂₃ - δ₁₂² - δ₁₃² - δ₂₃².

The upper bound is attained by the hexagon spanned by the six boundary points of the reference triangle. The module
also evaluates the closed-form optimal placement of the scaled reference triangle inside that hexagon, which certifies
the bound.
"""

from enum import StrEnum
from itertools import permutations
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from ataraxis_base_utilities import console

from ..exceptions import (
    NotThreePointsError,
    InvalidDiversityError,
    DegenerateQuadraticError,
    PreconditionViolatedError,
)
from ..diversities import DiversityTable, check_axioms

SQRT3: float = float(np.sqrt(3.0))
"""The square root of 3, the side length of the reference triangle."""

DECISION_SLACK: float = 1e-9
"""The relative slack of the embedding inequalities, scaled by 1 + the largest input value."""

PARAMETER_TOLERANCE: float = 1e-12
"""The absolute tolerance of the contact parameter range checks."""


def reference_triangle() -> NDArray[np.float64]:
    """Returns the (3, 2) array of reference triangle vertices p₁ = (-√3/2, -1/2), p₂ = (√3/2, -1/2), p₃ = (0, 1).

    The triangle is equilateral with side √3, circumradius 1, and centroid at the origin.
    """
    return np.array([[-SQRT3 / 2.0, -0.5], [SQRT3 / 2.0, -0.5], [0.0, 1.0]])


class Inequality(StrEnum):
    """Defines the inequalities evaluated by the three-point embedding decision."""

    PAIRWISE_LOWER = "pairwise_lower"
    """δ₁₂ - δ₁₃ ≤ δ₂₃."""
    PAIRWISE_UPPER = "pairwise_upper"
    """δ₂₃ ≤ δ₁₂ + δ₁₃."""
    TRIPLE_LOWER = "triple_lower"
    """max δᵢⱼ ≤ δ₁₂₃."""
    MINKOWSKI_UPPER = "minkowski_upper"
    """δ₁₂₃ ≤ min(δᵢⱼ + δⱼₖ), the remaining diversity condition on three points."""
    BANACH_UPPER = "banach_upper"
    """δ₁₂₃ ≤ 4·δ₁₂·δ₁₃·δ₂₃ / Q."""


@dataclass(frozen=True)
class ThreePointDiversity:
    """Stores a three-point diversity with its labels ordered so that δ₁₃ ≤ δ₁₂.

    Notes:
        Canonical point i corresponds to the original ground label at index permutation[i]. Use canonicalize() to
        build instances from diversity tables or from_values() to build them from raw values.
    """

    d12: float
    """The value of the canonical pair {1, 2}."""
    d13: float
    """The value of the canonical pair {1, 3}. Never larger than d12."""
    d23: float
    """The value of the canonical pair {2, 3}."""
    d123: float
    """The value of the whole three-point set."""
    permutation: tuple[int, int, int] = (0, 1, 2)
    """Maps canonical point indices to the indices of the original ground labels."""
    labels: tuple[str, str, str] = ("x1", "x2", "x3")
    """The original ground labels, in original order."""

    def __post_init__(self) -> None:
        """Verifies that all values are positive and that the canonical ordering holds."""
        values = (self.d12, self.d13, self.d23, self.d123)
        if not all(np.isfinite(value) and value > 0.0 for value in values):
            message = (
                f"Unable to construct the ThreePointDiversity instance. All pair and triple values must be finite and "
                f"positive, but got (d12, d13, d23, d123) = {values}."
            )
            console.error(message=message, error=InvalidDiversityError)
            raise InvalidDiversityError(message)  # pragma: no cover
        if self.d13 > self.d12:
            message = (
                f"Unable to construct the ThreePointDiversity instance. Expected d13 ≤ d12, but got d13 = {self.d13} "
                f"and d12 = {self.d12}. Use canonicalize() to reorder the labels."
            )
            console.error(message=message, error=ValueError)
            raise ValueError(message)  # pragma: no cover

    @property
    def pairs(self) -> tuple[float, float, float]:
        """Returns the canonical pair values (d12, d13, d23)."""
        return self.d12, self.d13, self.d23

    @property
    def canonical_labels(self) -> tuple[str, str, str]:
        """Returns the original labels of the canonical points 1, 2, and 3."""
        first, second, third = (self.labels[index] for index in self.permutation)
        return first, second, third

    def slack(self, relative: float = DECISION_SLACK) -> float:
        """Returns the absolute decision slack relative·(1 + largest value)."""
        return relative * (1.0 + max(self.d12, self.d13, self.d23, self.d123))

    def to_original_order(self, points: NDArray[np.float64]) -> NDArray[np.float64]:
        """Reorders per-point data given in canonical order (row i belongs to canonical point i + 1) into the original
        label order."""
        points = np.asarray(points)
        reordered = np.empty_like(points)
        reordered[list(self.permutation)] = points
        return reordered

    def with_triple(self, d123: float) -> "ThreePointDiversity":
        """Returns a copy with the triple value replaced."""
        return ThreePointDiversity(
            d12=self.d12, d13=self.d13, d23=self.d23, d123=d123, permutation=self.permutation, labels=self.labels
        )

    @classmethod
    def from_values(
        cls, d12: float, d13: float, d23: float, d123: float, labels: tuple[str, str, str] = ("x1", "x2", "x3")
    ) -> "ThreePointDiversity":
        """Canonicalizes raw three-point values without verifying the diversity axioms."""
        table = DiversityTable.from_three_point(d12=d12, d13=d13, d23=d23, d123=d123, labels=labels)
        return canonicalize(table=table, validate=False)


def canonicalize(table: DiversityTable, *, validate: bool = True) -> ThreePointDiversity:
    """Relabels the input three-point table so that δ₁₃ ≤ δ₁₂.

    Notes:
        Tables that already satisfy the ordering keep the identity permutation, which makes ties (δ₁₂ = δ₁₃) stable.
        Otherwise, the lexicographically smallest permutation that moves the largest pair value to δ₁₂ is chosen.

    Args:
        table: The three-point diversity table.
        validate: Determines whether to verify the diversity axioms. Decision procedures disable the check, since
            they report failed inequalities instead of raising.

    Returns:
        The canonical three-point diversity.

    Raises:
        NotThreePointsError: If the ground set does not have exactly three labels.
        InvalidDiversityError: If validation is requested and the table violates the axioms, or if any pair or triple
            value is not positive.
        IncompleteTableError: If the table does not store some pair or triple value.
    """
    if len(table.ground) != 3:  # noqa: PLR2004
        message = (
            f"Unable to canonicalize the three-point diversity. Expected a ground set of 3 labels, but got "
            f"{len(table.ground)}: {list(table.ground)}."
        )
        console.error(message=message, error=NotThreePointsError)
        raise NotThreePointsError(message)  # pragma: no cover

    if validate:
        report = check_axioms(table=table)
        if not report.ok:
            violation = report.violations[0]
            message = (
                f"Unable to canonicalize the three-point diversity. The table violates {violation.axiom} on "
                f"{[list(subset) for subset in violation.subsets]} ({violation.lhs} vs {violation.rhs})."
            )
            console.error(message=message, error=InvalidDiversityError)
            raise InvalidDiversityError(message)  # pragma: no cover

    ground = table.ground
    distances = np.zeros((3, 3))
    for i, j in ((0, 1), (0, 2), (1, 2)):
        distances[i, j] = distances[j, i] = table.value((ground[i], ground[j]))
    triple = table.value(ground)

    largest = distances.max()
    chosen = (0, 1, 2)
    if distances[0, 2] > distances[0, 1]:
        chosen = next(
            (first, second, third)
            for first, second, third in permutations(range(3))
            if distances[first, second] == largest and distances[first, third] <= largest
        )

    first, second, third = chosen
    return ThreePointDiversity(
        d12=float(distances[first, second]),
        d13=float(distances[first, third]),
        d23=float(distances[second, third]),
        d123=float(triple),
        permutation=chosen,
        labels=(ground[0], ground[1], ground[2]),
    )


def pairwise_feasible(diversity: ThreePointDiversity, *, slack: float = DECISION_SLACK) -> bool:
    """Determines whether the pair values satisfy δ₁₂ - δ₁₃ ≤ δ₂₃ ≤ δ₁₂ + δ₁₃ within the decision slack."""
    epsilon = diversity.slack(relative=slack)
    return diversity.d12 - diversity.d13 - epsilon <= diversity.d23 <= diversity.d12 + diversity.d13 + epsilon


def minkowski_range(diversity: ThreePointDiversity) -> tuple[float, float]:
    """Returns the interval [max δᵢⱼ, min(δᵢⱼ + δⱼₖ)] of triple values that make the pair values a diversity."""
    d12, d13, d23 = diversity.pairs
    return max(d12, d13, d23), min(d12 + d13, d12 + d23, d13 + d23)


def quadratic_form(x: float, y: float, z: float) -> float:
    """Evaluates Q(x, y, z) = 2xy + 2xz + 2yz - x² - y² - z²."""
    return 2.0 * (x * y + x * z + y * z) - x * x - y * y - z * z


def _positive_quadratic(x: float, y: float, z: float) -> float:
    """Returns Q(x, y, z) or raises DegenerateQuadraticError if it is not strictly positive."""
    value = quadratic_form(x, y, z)
    if value <= 0.0:
        message = (
            f"Unable to evaluate the Banach upper bound. The quadratic form 2xy + 2xz + 2yz - x² - y² - z² is {value} "
            f"for (x, y, z) = ({x}, {y}, {z}), but it must be positive. The pair values do not satisfy the pairwise "
            f"inequalities."
        )
        console.error(message=message, error=DegenerateQuadraticError)
        raise DegenerateQuadraticError(message)  # pragma: no cover
    return value


def banach_upper_bound(x: float, y: float, z: float) -> float:
    """Computes the largest triple value 4xyz / Q(x, y, z) that a symmetric body can induce on three points with pair
    values x, y, and z.

    Notes:
        The value equals the circumradius of the reference triangle in the hexagon witness and never exceeds the
        planar Bohnenblust bound 4/3·max(x, y, z). It is symmetric in its arguments.

    Raises:
        DegenerateQuadraticError: If Q(x, y, z) ≤ 0.
    """
    return 4.0 * x * y * z / _positive_quadratic(x, y, z)


def printed_banach_upper_bound(x: float, y: float, z: float) -> float:
    """Computes the historical closed form 8xyz / (√3·Q(x, y, z)).

    Notes:
        This value is the reciprocal of the placement step length and exceeds the attainable bound
        banach_upper_bound() by the factor 2/√3. It is reported for comparison only and is never used in decisions.

    Raises:
        DegenerateQuadraticError: If Q(x, y, z) ≤ 0.
    """
    return 8.0 * x * y * z / (SQRT3 * _positive_quadratic(x, y, z))


def banach_range(diversity: ThreePointDiversity) -> tuple[float, float]:
    """Returns the interval [max δᵢⱼ, 4·δ₁₂·δ₁₃·δ₂₃ / Q] of triple values realizable by symmetric bodies.

    Raises:
        DegenerateQuadraticError: If the pair values make the quadratic form nonpositive.
    """
    d12, d13, d23 = diversity.pairs
    return max(d12, d13, d23), banach_upper_bound(d12, d13, d23)


@dataclass(frozen=True)
class EmbeddingDecision:
    """Stores the verdict of the three-point embedding decision."""

    minkowski: bool
    """Determines whether the values form a diversity (equivalently, a Minkowski-embeddable one on three points)."""
    banach: bool
    """Determines whether some symmetric body induces the values. Implies minkowski."""
    minkowski_interval: tuple[float, float]
    """The interval of triple values that make the pair values a diversity."""
    banach_interval: tuple[float, float] | None
    """The interval of triple values realizable by symmetric bodies, or None if the pair values are infeasible."""
    failed_inequalities: tuple[Inequality, ...]
    """The inequalities that fail within the decision slack."""
    diversity: ThreePointDiversity
    """The canonicalized input."""
    printed_banach_hi: float | None
    """The historical upper bound 8xyz / (√3·Q), reported for comparison only."""


def decide_banach(
    diversity: DiversityTable | ThreePointDiversity, *, slack: float = DECISION_SLACK
) -> EmbeddingDecision:
    """Decides whether the input three-point diversity is induced by some origin-symmetric convex body.

    Notes:
        The verdict is invariant under relabeling and under scaling all four values by a positive factor. Closed
        interval endpoints are accepted within the slack relative·(1 + largest value).

    Args:
        diversity: The three-point diversity as a table or an already canonical record.
        slack: The relative decision slack.

    Returns:
        The embedding decision.

    Raises:
        NotThreePointsError: If a table over a ground set of different size is provided.
        InvalidDiversityError: If any pair or triple value is not positive.
    """
    if isinstance(diversity, DiversityTable):
        diversity = canonicalize(table=diversity, validate=False)

    epsilon = diversity.slack(relative=slack)
    d12, d13, d23 = diversity.pairs
    triple = diversity.d123
    failed: list[Inequality] = []

    if d12 - d13 > d23 + epsilon:
        failed.append(Inequality.PAIRWISE_LOWER)
    if d23 > d12 + d13 + epsilon:
        failed.append(Inequality.PAIRWISE_UPPER)

    minkowski_interval = minkowski_range(diversity)
    if triple < minkowski_interval[0] - epsilon:
        failed.append(Inequality.TRIPLE_LOWER)
    if triple > minkowski_interval[1] + epsilon:
        failed.append(Inequality.MINKOWSKI_UPPER)
    minkowski = Inequality.TRIPLE_LOWER not in failed and Inequality.MINKOWSKI_UPPER not in failed

    banach_interval: tuple[float, float] | None = None
    printed: float | None = None
    pairwise = Inequality.PAIRWISE_LOWER not in failed and Inequality.PAIRWISE_UPPER not in failed
    if pairwise and quadratic_form(d12, d13, d23) > 0.0:
        banach_interval = banach_range(diversity)
        printed = printed_banach_upper_bound(d12, d13, d23)
        if triple > banach_interval[1] + epsilon:
            failed.append(Inequality.BANACH_UPPER)

    banach = minkowski and banach_interval is not None and not failed
    return EmbeddingDecision(
        minkowski=minkowski,
        banach=banach,
        minkowski_interval=minkowski_interval,
        banach_interval=banach_interval,
        failed_inequalities=tuple(failed),
        diversity=diversity,
        printed_banach_hi=printed,
    )


def contact_parameters(diversity: ThreePointDiversity) -> tuple[float, float, float]:
    """Returns the hexagon parameters (a, b, c) = (√3 / (2δ₁₂), √3 / (2δ₁₃), √3 / (2δ₂₃))."""
    d12, d13, d23 = diversity.pairs
    return SQRT3 / (2.0 * d12), SQRT3 / (2.0 * d13), SQRT3 / (2.0 * d23)


def boundary_points(diversity: ThreePointDiversity) -> NDArray[np.float64]:
    """Returns the six points that every witness body must carry on its boundary.

    The points are ±a·(1, 0), ±(b/2)·(1, √3), and ±(c/2)·(1, -√3), where (a, b, c) are the contact parameters. They are
    the normalized differences of the reference triangle vertices, so gauge 1 at each point reproduces the pair values.

    Returns:
        The (6, 2) array [q₁, -q₁, q₂, -q₂, q₃, -q₃].
    """
    a, b, c = contact_parameters(diversity)
    first = np.array([a, 0.0])
    second = (b / 2.0) * np.array([1.0, SQRT3])
    third = (c / 2.0) * np.array([1.0, -SQRT3])
    return np.array([first, -first, second, -second, third, -third])


@dataclass(frozen=True)
class PlacementSolution:
    """Stores the closed-form placement of the scaled reference triangle with all vertices on the hexagon boundary.

    Notes:
        The placed vertices are p₃ = (x0, y0), p₂ = p₃ + step·(1, -√3), and p₁ = p₃ + step·(-1, -√3). Vertex p₃ lies
        on the hexagon edge [(b/2)(1, √3), (c/2)(-1, √3)] at parameter t1, vertex p₂ on [a(1, 0), (c/2)(1, -√3)] at
        t2, and vertex p₁ on [-a(1, 0), (b/2)(-1, -√3)] at t3.
    """

    step: float
    """The step length along (±1, -√3) from the top vertex to the two lower vertices."""
    x0: float
    """The abscissa of the top vertex."""
    y0: float
    """The ordinate of the top vertex."""
    t1: float
    """The edge parameter of the top vertex."""
    t2: float
    """The edge parameter of the right vertex."""
    t3: float
    """The edge parameter of the left vertex."""
    a: float
    """The hexagon parameter √3 / (2δ₁₂)."""
    b: float
    """The hexagon parameter √3 / (2δ₁₃)."""
    c: float
    """The hexagon parameter √3 / (2δ₂₃)."""

    @property
    def scale(self) -> float:
        """Returns the factor by which the reference triangle is scaled, which equals 1 / R(triangle, hexagon)."""
        return 2.0 * self.step / SQRT3

    @property
    def radius(self) -> float:
        """Returns the circumradius of the reference triangle in the hexagon witness, √3 / (2·step)."""
        return SQRT3 / (2.0 * self.step)


def _placement_from_parameters(a: float, b: float, c: float) -> PlacementSolution:
    """Evaluates the closed-form placement for the input hexagon parameters."""
    step = (2.0 * a * b * c * (a + b) - a * a * b * b - c * c * (a - b) ** 2) / (4.0 * a * b * c)
    x0 = ((a - b) * c * c + b * b * (c - a)) / (4.0 * b * c)
    y0 = SQRT3 * ((2.0 * a * b + b * b) * c - a * b * b - (a - b) * c * c) / (4.0 * b * c)
    t1 = (a * b - (a - b) * c) / (2.0 * b * c)
    t2 = (a * b + (a - b) * c) / (2.0 * a * c)
    t3 = (a * b + (a - b) * c) / (2.0 * a * b)
    return PlacementSolution(step=step, x0=x0, y0=y0, t1=t1, t2=t2, t3=t3, a=a, b=b, c=c)


def optimal_placement(diversity: ThreePointDiversity) -> PlacementSolution:
    """Computes the placement of the largest homothet of the reference triangle inside the hexagon witness.

    Notes:
        The placement is the unique solution of the linear system that puts the three vertices on three alternate
        hexagon edges. Its radius equals banach_range(diversity)[1].

    Raises:
        PreconditionViolatedError: If the pair values are not pairwise feasible.
    """
    if not pairwise_feasible(diversity):
        message = (
            f"Unable to compute the optimal placement. The pair values {diversity.pairs} violate "
            f"d12 - d13 ≤ d23 ≤ d12 + d13."
        )
        console.error(message=message, error=PreconditionViolatedError)
        raise PreconditionViolatedError(message)  # pragma: no cover
    a, b, c = contact_parameters(diversity)
    return _placement_from_parameters(a, b, c)


def placed_triangle(placement: PlacementSolution) -> NDArray[np.float64]:
    """Returns the (3, 2) array of placed vertices (p₁, p₂, p₃), a translate of placement.scale times the reference
    triangle."""
    top = np.array([placement.x0, placement.y0])
    right = top + placement.step * np.array([1.0, -SQRT3])
    left = top + placement.step * np.array([-1.0, -SQRT3])
    return np.array([left, right, top])


def check_t_lambda(a: float, b: float, c: float) -> bool:
    """Verifies that the placement parameters lie in their admissible ranges: t1, t2, t3 ∈ [0, 1] and step ≥ 0.

    Args:
        a: The first hexagon parameter. Must satisfy 0 < a ≤ b.
        b: The second hexagon parameter.
        c: The third hexagon parameter. Must satisfy 1/a - 1/b ≤ 1/c ≤ 1/a + 1/b.

    Returns:
        True if all four statements hold within 1e-12.

    Raises:
        PreconditionViolatedError: If a hypothesis fails. The message names the failed hypothesis.
    """
    tolerance = PARAMETER_TOLERANCE * (1.0 + abs(1.0 / a) + abs(1.0 / b)) if a > 0.0 and b > 0.0 else 0.0
    hypothesis = None
    if not 0.0 < a <= b:
        hypothesis = f"0 < a ≤ b (got a = {a}, b = {b})"
    elif c <= 0.0:
        hypothesis = f"c > 0 (got c = {c})"
    elif 1.0 / c < 1.0 / a - 1.0 / b - tolerance:
        hypothesis = f"1/a - 1/b ≤ 1/c (got {1.0 / a - 1.0 / b} > {1.0 / c})"
    elif 1.0 / c > 1.0 / a + 1.0 / b + tolerance:
        hypothesis = f"1/c ≤ 1/a + 1/b (got {1.0 / c} > {1.0 / a + 1.0 / b})"
    if hypothesis is not None:
        message = f"Unable to check the placement parameters. The hypothesis {hypothesis} does not hold."
        console.error(message=message, error=PreconditionViolatedError)
        raise PreconditionViolatedError(message)  # pragma: no cover

    placement = _placement_from_parameters(a, b, c)
    parameters = np.array([placement.t1, placement.t2, placement.t3])
    return bool(
        np.all(parameters >= -PARAMETER_TOLERANCE)
        and np.all(parameters <= 1.0 + PARAMETER_TOLERANCE)
        and placement.step >= -PARAMETER_TOLERANCE
    )


def psd_identity_terms(x: float, y: float, z: float) -> tuple[float, float, float]:
    """Returns the terms of the decomposition Q(x, y, z) = (z - x + y)(x + y - z) + 4y(x - y) + 2y(z - x + y).

    All three terms are nonnegative whenever y ≤ x and x - y ≤ z ≤ x + y, which proves Q > 0 on the open feasible
    domain.
    """
    return (z - x + y) * (x + y - z), 4.0 * y * (x - y), 2.0 * y * (z - x + y)


def psd_identity_residual(x: float, y: float, z: float) -> float:
    """Returns Q(x, y, z) minus the sum of its decomposition terms. The decomposition is a polynomial identity, so the
    residual vanishes up to rounding for all real inputs."""
    return quadratic_form(x, y, z) - sum(psd_identity_terms(x, y, z))
