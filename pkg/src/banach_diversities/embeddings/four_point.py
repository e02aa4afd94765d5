"""Provides the four-point embedding machinery: the pair and triple necessary conditions, the generator body built from
the pair radii, and the twelve-variable linear system that places the scaled simplex with one vertex on each of four
triangular faces of that body.
"""

from typing import Any
from itertools import combinations
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from ataraxis_base_utilities import console

from ..geometry import SymmetricPolytope
from .three_point import DECISION_SLACK, banach_upper_bound
from ..exceptions import InvalidDiversityError, SingularSystemError

PAIRS: tuple[tuple[int, int], ...] = tuple(combinations(range(1, 5), 2))
"""The six point pairs (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4) in field order."""

TRIPLES: tuple[tuple[int, int, int], ...] = tuple(combinations(range(1, 5), 3))
"""The four point triples in lexicographic order."""

SINGULARITY_THRESHOLD: float = 1e-12
"""The ratio of the smallest to the largest singular value below which the face system counts as singular."""

RESIDUAL_LIMIT: float = 1e-10
"""The largest accepted residual of the solved face system, relative to the system scale."""

COEFFICIENT_TOLERANCE: float = 1e-9
"""The tolerance of the convex combination range checks of the face system coefficients."""


@dataclass(frozen=True)
class FourPointRadii:
    """Stores the six pair radii of a four-point diversity."""

    r12: float
    """The value of the pair {1, 2}."""
    r13: float
    """The value of the pair {1, 3}."""
    r14: float
    """The value of the pair {1, 4}."""
    r23: float
    """The value of the pair {2, 3}."""
    r24: float
    """The value of the pair {2, 4}."""
    r34: float
    """The value of the pair {3, 4}."""

    def __post_init__(self) -> None:
        """Verifies that all radii are finite and positive."""
        if not all(np.isfinite(value) and value > 0.0 for value in self.values()):
            message = (
                f"Unable to construct the FourPointRadii instance. All pair radii must be finite and positive, but "
                f"got {self.values()}."
            )
            console.error(message=message, error=InvalidDiversityError)
            raise InvalidDiversityError(message)  # pragma: no cover

    def values(self) -> tuple[float, float, float, float, float, float]:
        """Returns the radii in field order."""
        return self.r12, self.r13, self.r14, self.r23, self.r24, self.r34

    def pair(self, first: int, second: int) -> float:
        """Returns the radius of the pair {first, second}, with 1-based point indices in any order."""
        low, high = min(first, second), max(first, second)
        return float(getattr(self, f"r{low}{high}"))

    def scaled(self, factor: float) -> "FourPointRadii":
        """Returns the radii multiplied by the input factor."""
        return FourPointRadii(*(factor * value for value in self.values()))

    def to_dict(self) -> dict[str, float]:
        """Returns the radii keyed by their field names."""
        return {f"r{first}{second}": self.pair(first, second) for first, second in PAIRS}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "FourPointRadii":
        """Builds the radii from a mapping keyed by field names."""
        return cls(**{f"r{first}{second}": float(data[f"r{first}{second}"]) for first, second in PAIRS})

    @classmethod
    def uniform(cls, value: float = 1.0) -> "FourPointRadii":
        """Returns radii that are all equal to the input value."""
        return cls(value, value, value, value, value, value)


def simplex_points() -> NDArray[np.float64]:
    """Returns the (4, 3) array of simplex vertices p₁ = (1, 0, 0), p₂ = 0, p₃ = (0, 1, 0), and p₄ = (0, 0, 1)."""
    return np.array([[1.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])


def pair_generator(radii: FourPointRadii, first: int, second: int) -> NDArray[np.float64]:
    """Returns P_ij = (p_i - p_j) / (2R_ij) for 1-based point indices, the normalized difference that every witness body
    carries on its boundary."""
    points = simplex_points()
    return (points[first - 1] - points[second - 1]) / (2.0 * radii.pair(first, second))


def generators_from_radii(radii: FourPointRadii) -> SymmetricPolytope:
    """Builds the body conv(±P_ij) spanned by the six normalized simplex edge vectors.

    Notes:
        Pair circumradii of the simplex vertices in this body never exceed the input radii. They are equal exactly when
        the corresponding generator is extreme in the body.

    Raises:
        DegenerateBodyError: If the generators do not span three dimensions.
    """
    return SymmetricPolytope(generators=np.array([pair_generator(radii, first, second) for first, second in PAIRS]))


def pairwise_feasible4(radii: FourPointRadii, *, slack: float = DECISION_SLACK) -> bool:
    """Determines whether the twelve triangle inequalities R_ij ≤ R_ik + R_kj hold within the decision slack."""
    epsilon = slack * (1.0 + max(radii.values()))
    for first, second in PAIRS:
        for middle in range(1, 5):
            if middle in (first, second):
                continue
            if radii.pair(first, second) > radii.pair(first, middle) + radii.pair(middle, second) + epsilon:
                return False
    return True


def triple_bounds(radii: FourPointRadii) -> dict[tuple[int, int, int], tuple[float, float]]:
    """Returns the interval [max pair radius, Banach upper bound] that every triple radius must lie in.

    Raises:
        DegenerateQuadraticError: If some triple's pair radii make the quadratic form nonpositive.
    """
    bounds = {}
    for triple in TRIPLES:
        first, second, third = triple
        values = (radii.pair(first, second), radii.pair(first, third), radii.pair(second, third))
        bounds[triple] = (max(values), banach_upper_bound(*values))
    return bounds


@dataclass(frozen=True)
class FaceSystemSolution:
    """Stores the solution of the face contact system.

    Notes:
        The placed simplex has the vertex p₄ at (x0, y0, z0) and the vertices p₁, p₃, and p₂ at
        (x0, y0, z0) + scale·(p_i - p₄). Each vertex is written as the combination (1 - α - β)·U + α·V + β·W of the
        three generators spanning its face, with (α, β) = (a, b), (c, d), (e, f), and (g, h) for the faces of p₄, p₁, p₃, and p₂.
    """

    scale: float
    """The scaling factor of the placed simplex, equal to 1 / R₁₂₃₄ when the contact pattern applies."""
    x0: float
    """The first coordinate of the placed vertex p₄."""
    y0: float
    """The second coordinate of the placed vertex p₄."""
    z0: float
    """The third coordinate of the placed vertex p₄."""
    a: float
    """The weight of P₄₂ on the face of p₄."""
    b: float
    """The weight of P₄₃ on the face of p₄."""
    c: float
    """The weight of P₁₃ on the face of p₁."""
    d: float
    """The weight of P₁₄ on the face of p₁."""
    e: float
    """The weight of P₃₂ on the face of p₃."""
    f: float
    """The weight of P₃₄ on the face of p₃."""
    g: float
    """The weight of P₂₃ on the face of p₂."""
    h: float
    """The weight of P₂₄ on the face of p₂."""
    residual: float
    """The largest absolute residual of the twelve equations at the solution."""

    @property
    def coefficients(self) -> tuple[float, ...]:
        """Returns the eight face weights (a, ..., h)."""
        return self.a, self.b, self.c, self.d, self.e, self.f, self.g, self.h

    @property
    def coefficients_valid(self) -> bool:
        """Determines whether every face weight pair describes a convex combination and the scale is positive."""
        weights = np.array(self.coefficients).reshape(4, 2)
        remainders = 1.0 - weights.sum(axis=1)
        return bool(
            np.all(weights >= -COEFFICIENT_TOLERANCE)
            and np.all(weights <= 1.0 + COEFFICIENT_TOLERANCE)
            and np.all(remainders >= -COEFFICIENT_TOLERANCE)
            and np.all(remainders <= 1.0 + COEFFICIENT_TOLERANCE)
            and self.scale > 0.0
        )

    @property
    def radius(self) -> float:
        """Returns 1 / scale, the simplex circumradius implied by the contact pattern."""
        return 1.0 / self.scale


def face_system(radii: FourPointRadii) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Assembles the 12×12 face contact system over the unknowns (x0, y0, z0, scale, a, b, c, d, e, f, g, h).

    Each face contributes three rows of (x0, y0, z0) + scale·direction + α·(U - V) + β·(U - W) = U.

    Returns:
        The system matrix and the right-hand side.
    """
    faces = (
        # (direction, U, V, W): the face of p₄ and then the faces of p₁, p₃, and p₂.
        ((0, 0, 0), (4, 1), (4, 2), (4, 3)),
        ((1, 0, -1), (1, 2), (1, 3), (1, 4)),
        ((0, 1, -1), (3, 1), (3, 2), (3, 4)),
        ((0, 0, -1), (2, 1), (2, 3), (2, 4)),
    )
    matrix = np.zeros((12, 12))
    rhs = np.zeros(12)
    for index, (direction, first, second, third) in enumerate(faces):
        rows = slice(3 * index, 3 * index + 3)
        anchor = pair_generator(radii, *first)
        matrix[rows, :3] = np.eye(3)
        matrix[rows, 3] = direction
        matrix[rows, 4 + 2 * index] = anchor - pair_generator(radii, *second)
        matrix[rows, 5 + 2 * index] = anchor - pair_generator(radii, *third)
        rhs[rows] = anchor
    return matrix, rhs


def solve_face_system(radii: FourPointRadii) -> FaceSystemSolution:
    """Solves the face contact system by LU elimination with partial pivoting.

    Notes:
        The coefficient ranges are reported through FaceSystemSolution.coefficients_valid and never assumed. Scaling
        all radii by t scales the solution's scale by 1/t and leaves the face weights unchanged.

    Raises:
        SingularSystemError: If the smallest singular value of the system is below 1e-12 times the largest, or if the
            solution residual exceeds 1e-10 times the system scale.
    """
    matrix, rhs = face_system(radii)
    singular_values = np.linalg.svd(matrix, compute_uv=False)
    if singular_values[-1] < SINGULARITY_THRESHOLD * singular_values[0]:
        message = (
            f"Unable to solve the face contact system. The system is singular for the radii {radii.to_dict()} "
            f"(condition number {singular_values[0] / max(singular_values[-1], np.finfo(np.float64).tiny):.3e})."
        )
        console.error(message=message, error=SingularSystemError)
        raise SingularSystemError(message)  # pragma: no cover

    solution = np.linalg.solve(matrix, rhs)
    residual = float(np.abs(matrix @ solution - rhs).max())
    scale = 1.0 + float(np.abs(matrix).max()) * float(np.abs(solution).max()) + float(np.abs(rhs).max())
    if residual > RESIDUAL_LIMIT * scale:
        message = (
            f"Unable to solve the face contact system. The solution residual {residual} exceeds the limit "
            f"{RESIDUAL_LIMIT * scale} for the radii {radii.to_dict()}."
        )
        console.error(message=message, error=SingularSystemError)
        raise SingularSystemError(message)  # pragma: no cover

    x0, y0, z0, factor, a, b, c, d, e, f, g, h = (float(value) for value in solution)
    return FaceSystemSolution(
        scale=factor, x0=x0, y0=y0, z0=z0, a=a, b=b, c=c, d=d, e=e, f=f, g=g, h=h, residual=residual
    )
