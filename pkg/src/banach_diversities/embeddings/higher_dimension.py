"""Provides the randomized probe confirming that bodies in three dimensions induce no three-point diversities beyond
those realizable in the plane."""

from dataclasses import dataclass

from tqdm import tqdm
import numpy as np
from numpy.typing import NDArray
from ataraxis_time import PrecisionTimer
from ataraxis_base_utilities import LogLevel, console

from ..geometry import SymmetricPolytope, random_symmetric_polytope
from .witnesses import measure_triangle
from .three_point import Inequality, ThreePointDiversity, decide_banach

PROBE_TOLERANCE: float = 1e-7
"""The relative slack with which the sampled values must satisfy the planar embedding inequalities."""

MINIMUM_TRIANGLE_AREA: float = 1e-6
"""The smallest relative area (scaled by the squared longest side) of a sampled triangle."""


@dataclass(frozen=True, eq=False)
class ProbeViolation:
    """Stores a sampled body and triangle whose induced values break a planar embedding inequality."""

    trial: int
    """The index of the violating trial."""
    values: tuple[float, float, float, float]
    """The measured (δ₁₂, δ₁₃, δ₂₃, δ₁₂₃) in triangle point order."""
    failed_inequalities: tuple[Inequality, ...]
    """The failed inequalities after canonical reordering."""
    generators: NDArray[np.float64]
    """The generators of the sampled body."""
    triangle: NDArray[np.float64]
    """The (3, 3) array of sampled triangle vertices."""


@dataclass(frozen=True)
class ProbeReport:
    """Stores the outcome of the higher-dimensional probe."""

    trials: int
    """The number of sampled trials."""
    seed: int
    """The seed of the sampler."""
    violations: tuple[ProbeViolation, ...] = ()
    """Every detected counterexample. Any entry indicates an implementation defect."""

    @property
    def ok(self) -> bool:
        """Returns True if no counterexample was found."""
        return not self.violations


def random_triangle(generator: np.random.Generator, dimension: int = 3) -> NDArray[np.float64]:
    """Samples a Gaussian triangle, redrawing collinear (or nearly collinear) vertex triples."""
    while True:
        triangle = generator.standard_normal((3, dimension))
        first, second = triangle[1] - triangle[0], triangle[2] - triangle[0]
        # Gram determinant of the two edge vectors equals the squared parallelogram area.
        area = np.sqrt(max(0.0, float((first @ first) * (second @ second) - (first @ second) ** 2)))
        longest = float(max(np.linalg.norm(first), np.linalg.norm(second), np.linalg.norm(first - second)))
        if area > MINIMUM_TRIANGLE_AREA * longest**2:
            return triangle


def planar_section_body(planar: SymmetricPolytope, apex_height: float = 1.0) -> SymmetricPolytope:
    """Lifts a planar body to three dimensions as a double pyramid: the planar generators in the z = 0 plane plus the
    apex pair ±(0, 0, apex_height). The section of the lifted body by the z = 0 plane is the planar body."""
    lifted = np.hstack((planar.generators, np.zeros((planar.generators.shape[0], 1))))
    return SymmetricPolytope(generators=np.vstack((lifted, [[0.0, 0.0, apex_height]])))


def probe_triangle(
    triangle: NDArray[np.float64], body: SymmetricPolytope, *, slack: float = PROBE_TOLERANCE
) -> tuple[tuple[float, float, float, float], tuple[Inequality, ...]]:
    """Measures the values a body induces on a triangle and evaluates the planar embedding inequalities.

    Returns:
        The measured (δ₁₂, δ₁₃, δ₂₃, δ₁₂₃) and the failed inequalities (empty if the values are planar-realizable).
    """
    values = measure_triangle(points=triangle, body=body)
    diversity = ThreePointDiversity.from_values(*values)
    decision = decide_banach(diversity, slack=slack)
    return values, decision.failed_inequalities


def higher_dim_probe(trials: int, seed: int = 42, *, progress: bool = False) -> ProbeReport:
    """Samples random symmetric polytopes in three dimensions (8 to 16 generator pairs) and random nondegenerate
    triangles and verifies that the induced values satisfy the planar embedding inequalities.

    Args:
        trials: The number of sampled trials. Must be at least 1.
        seed: The seed of the sampler.
        progress: Determines whether to display a progress bar.

    Returns:
        The probe report listing every counterexample verbatim.
    """
    if trials < 1:
        message = f"Unable to run the higher-dimensional probe. The trial count must be at least 1, but got {trials}."
        console.error(message=message, error=ValueError)
        raise ValueError(message)  # pragma: no cover

    timer = PrecisionTimer("s")
    timer.reset()
    generator = np.random.default_rng(seed)
    violations = []
    for trial in tqdm(range(trials), desc="Probing three-dimensional bodies", unit="trial", disable=not progress):
        body = random_symmetric_polytope(generator=generator, dimension=3)
        triangle = random_triangle(generator=generator)
        values, failed = probe_triangle(triangle=triangle, body=body)
        if failed:
            violations.append(
                ProbeViolation(
                    trial=trial,
                    values=values,
                    failed_inequalities=failed,
                    generators=np.array(body.generators),
                    triangle=triangle,
                )
            )

    level = LogLevel.WARNING if violations else LogLevel.SUCCESS
    console.echo(
        message=(
            f"Higher-dimensional probe: finished {trials} trials in {timer.elapsed} seconds with {len(violations)} "
            f"counterexamples."
        ),
        level=level,
    )
    return ProbeReport(trials=trials, seed=seed, violations=tuple(violations))
