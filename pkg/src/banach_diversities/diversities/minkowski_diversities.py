"""Provides diversities induced by symmetric polytopes through the circumradius, the mixing-witness construction, and
the sampled verification of the sublinearity properties every such diversity satisfies.

A body C induces the diversity δ(A) = R(A, C) on any finite point set. Such diversities are sublinear: R(A + B, C) ≤
R(A, C) + R(B, C) for the Minkowski sum A + B = {a + b}, and R(λA, C) = |λ|·R(A, C) for every real λ (symmetry of C
covers negative λ). They also admit mixing witnesses: translations a, b with R((a + A) ∪ (b + B), C) ≤ max(R(A, C),
R(B, C)).
"""

from enum import StrEnum
from dataclasses import dataclass

from tqdm import tqdm
import numpy as np
from numpy.typing import NDArray
from ataraxis_base_utilities import LogLevel, console

from ..geometry import SymmetricPolytope
from ..exceptions import TooManyPointsError
from ..containment import circumradius, as_point_set
from .diversity_table import DiversityTable, subset_key

MAXIMUM_INDUCED_POINTS: int = 6
"""The largest point set for which the induced diversity is tabulated (63 circumradius programs)."""

SUBLINEARITY_TOLERANCE: float = 1e-8
"""The relative tolerance of the sampled sublinearity checks, scaled by 1 + the right-hand side."""


class SublinearProperty(StrEnum):
    """Defines the properties checked by the sublinearity sampler."""

    SUBADDITIVE = "subadditive"
    """R(A + B, C) ≤ R(A, C) + R(B, C)."""
    HOMOGENEOUS = "homogeneous"
    """R(λA, C) = |λ|·R(A, C), including negative λ."""
    MIXING = "mixing"
    """R((a + A) ∪ (b + B), C) ≤ max(R(A, C), R(B, C)) for the mixing witness translations a and b."""


@dataclass(frozen=True, eq=False)
class SublinearViolation:
    """Stores a sampled instance that violates one of the sublinearity properties."""

    trial: int
    """The index of the violating trial."""
    property: SublinearProperty
    """The violated property."""
    lhs: float
    """The left-hand side of the violated relation."""
    rhs: float
    """The right-hand side of the violated relation."""
    first_set: NDArray[np.float64]
    """The sampled set A."""
    second_set: NDArray[np.float64]
    """The sampled set B."""
    scalar: float
    """The sampled scalar λ."""


@dataclass(frozen=True)
class SublinearReport:
    """Stores the outcome of the sublinearity sampler."""

    trials: int
    """The number of sampled trials."""
    violations: tuple[SublinearViolation, ...] = ()
    """Every detected violation."""

    @property
    def ok(self) -> bool:
        """Returns True if no violation was detected."""
        return not self.violations


def induced_diversity(
    points: NDArray[np.float64], body: SymmetricPolytope, labels: tuple[str, ...] | None = None
) -> DiversityTable:
    """Tabulates the diversity that the input body induces on the input point set.

    Args:
        points: The (k, n) array of points, with k ≤ 6.
        body: The origin-symmetric polytope.
        labels: The optional point labels. Defaults to 'p1', 'p2', ... in input order.

    Returns:
        The table storing R(subset, C) for every nonempty subset of the points.

    Raises:
        TooManyPointsError: If more than 6 points are provided.
        DimensionMismatchError: If the points and the body dimensions do not match.
    """
    points = as_point_set(points=points, body=body)
    count = points.shape[0]
    if count > MAXIMUM_INDUCED_POINTS:
        message = (
            f"Unable to tabulate the induced diversity. Got {count} points, but at most {MAXIMUM_INDUCED_POINTS} are "
            f"supported ({(1 << count) - 1} circumradius programs would be required)."
        )
        console.error(message=message, error=TooManyPointsError)
        raise TooManyPointsError(message)  # pragma: no cover

    if labels is None:
        labels = tuple(f"p{index + 1}" for index in range(count))
    if len(labels) != count:
        message = f"Unable to tabulate the induced diversity. Got {len(labels)} labels for {count} points."
        console.error(message=message, error=ValueError)
        raise ValueError(message)  # pragma: no cover

    values: dict[str, float] = {}
    for mask in range(1, 1 << count):
        members = [bit for bit in range(count) if mask >> bit & 1]
        values[subset_key(labels[bit] for bit in members)] = circumradius(points=points[members], body=body).radius
    return DiversityTable(ground=labels, values=values)


def mixing_witness(
    first: NDArray[np.float64], second: NDArray[np.float64], body: SymmetricPolytope
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Computes translations a and b that place both input sets concentrically inside the smallest scaled body.

    Notes:
        The translations are the optimal circumradius translations of each set, so a + A ⊆ R(A, C)·C and b + B ⊆
        R(B, C)·C. Both translated sets therefore fit in max(R(A, C), R(B, C))·C, which bounds the circumradius of the
        union.

    Returns:
        The translations (a, b).
    """
    first_result = circumradius(points=first, body=body)
    second_result = circumradius(points=second, body=body)
    return first_result.center, second_result.center


def _random_set(generator: np.random.Generator, dimension: int) -> NDArray[np.float64]:
    """Samples a set of 1 to 4 Gaussian points."""
    return generator.standard_normal((int(generator.integers(1, 5)), dimension))


def check_sublinear_samples(
    body: SymmetricPolytope, trials: int, seed: int = 0, *, progress: bool = False
) -> SublinearReport:
    """Samples random finite sets and scalars and verifies the sublinearity, homogeneity, and mixing properties of the
    diversity induced by the input body.

    Notes:
        Trial 0 uses the scalar -1 (the symmetry case) and trial 1 uses the scalar 0. Later trials draw the scalar
        uniformly from [-3, 3].

    Args:
        body: The origin-symmetric polytope.
        trials: The number of sampled trials. Must be at least 1.
        seed: The seed of the random sampler.
        progress: Determines whether to display a progress bar.

    Returns:
        The sampling report listing every detected violation with its witness sets.
    """
    if trials < 1:
        message = f"Unable to sample the sublinearity properties. The trial count must be at least 1, but got {trials}."
        console.error(message=message, error=ValueError)
        raise ValueError(message)  # pragma: no cover

    generator = np.random.default_rng(seed)
    violations: list[SublinearViolation] = []
    for trial in tqdm(range(trials), desc="Sampling sublinearity", unit="trial", disable=not progress):
        first = _random_set(generator=generator, dimension=body.dim)
        second = _random_set(generator=generator, dimension=body.dim)
        scalar = -1.0 if trial == 0 else 0.0 if trial == 1 else float(generator.uniform(-3.0, 3.0))

        first_radius = circumradius(points=first, body=body).radius
        second_radius = circumradius(points=second, body=body).radius

        def record(name: SublinearProperty, lhs: float, rhs: float, *, equality: bool = False) -> None:
            slack = SUBLINEARITY_TOLERANCE * (1.0 + abs(rhs))
            failed = abs(lhs - rhs) > slack if equality else lhs > rhs + slack
            if failed:
                violations.append(
                    SublinearViolation(
                        trial=trial,  # noqa: B023
                        property=name,
                        lhs=lhs,
                        rhs=rhs,
                        first_set=first,  # noqa: B023
                        second_set=second,  # noqa: B023
                        scalar=scalar,  # noqa: B023
                    )
                )

        sums = (first[:, np.newaxis, :] + second[np.newaxis, :, :]).reshape(-1, body.dim)
        record(
            SublinearProperty.SUBADDITIVE,
            lhs=circumradius(points=sums, body=body).radius,
            rhs=first_radius + second_radius,
        )
        record(
            SublinearProperty.HOMOGENEOUS,
            lhs=circumradius(points=scalar * first, body=body).radius,
            rhs=abs(scalar) * first_radius,
            equality=True,
        )
        first_shift, second_shift = mixing_witness(first=first, second=second, body=body)
        union = np.vstack((first + first_shift, second + second_shift))
        record(
            SublinearProperty.MIXING,
            lhs=circumradius(points=union, body=body).radius,
            rhs=max(first_radius, second_radius),
        )

    if violations:
        console.echo(
            message=f"Sublinearity sampling found {len(violations)} violations in {trials} trials.",
            level=LogLevel.WARNING,
        )
    return SublinearReport(trials=trials, violations=tuple(violations))
