"""Provides the randomized harness that tests the conjectured four-point bound against measured circumradii.

Each trial builds the generator body of a set of pair radii, measures the simplex circumradius R₁₂₃₄ and the four
triple circumradii with the containment program, and compares them with the printed R₁₂₃₄ bound. The conjecture is
treated as a hypothesis: the harness reports verdict counts and never asserts the bound.
"""

import os
from enum import StrEnum
from pathlib import Path
from dataclasses import dataclass
from concurrent.futures import ProcessPoolExecutor, as_completed

from tqdm import tqdm
import numpy as np
import xxhash
from ataraxis_time import PrecisionTimer
from ataraxis_base_utilities import LogLevel, console, ensure_directory_exists

from ..reporting import dumps, dump_lines
from .four_point import (
    PAIRS,
    TRIPLES,
    FourPointRadii,
    FaceSystemSolution,
    simplex_points,
    solve_face_system,
    pairwise_feasible4,
    generators_from_radii,
)
from ..exceptions import SingularSystemError, PreconditionViolatedError
from ..containment import circumradius, pair_circumradius
from .four_point_formulas import printed_values

VERDICT_SLACK: float = 1e-7
"""The absolute slack of the verdict comparisons."""

TIGHT_TOLERANCE: float = 1e-12
"""The simplex reduced cost tolerance used to re-verify trials that appear to violate the bound."""

RADIUS_RANGE: tuple[float, float] = (0.5, 2.0)
"""The interval from which pair radii are sampled log-uniformly."""


class ConjectureVerdict(StrEnum):
    """Defines the outcomes of a conjecture trial."""

    CONSISTENT = "consistent"
    """The measured radius lies between the triple lower bound and the printed upper bound."""
    BOUND_VIOLATED = "bound_violated"
    """The face contact pattern applies, but the measured radius falls outside the bounds."""
    SYSTEM_INFEASIBLE = "system_infeasible"
    """The face system weights leave their convex ranges (or the system is singular), so the contact pattern assumed
    by the printed bound does not apply."""
    BOUND_UNDEFINED = "bound_undefined"
    """The contact pattern applies, but the printed bound has a vanishing denominator."""


@dataclass(frozen=True)
class ConjectureTrial:
    """Stores the measurements and the verdict of a single conjecture trial."""

    radii: FourPointRadii
    """The sampled pair radii."""
    measured_r1234: float
    """The circumradius of the simplex in the generator body."""
    lower: float
    """The largest circumradius of a vertex triple in the generator body."""
    upper: float | None
    """The printed R₁₂₃₄ bound, or None if its denominator vanishes."""
    verdict: ConjectureVerdict
    """The trial verdict."""
    system_radius: float | None
    """The radius 1 / scale implied by the face system, or None if the system is singular."""
    coefficients_valid: bool
    """Determines whether the face system weights describe convex combinations."""
    inner_pairs: tuple[str, ...]
    """The pairs whose generator is not extreme in the body, so their measured radius falls below the input radius."""
    reverified: bool = False
    """Determines whether the trial was re-measured at the tightened solver tolerance."""


def _measure(radii: FourPointRadii, tolerance: float | None) -> tuple[float, float, tuple[str, ...]]:
    """Returns the measured simplex radius, the largest triple radius, and the non-extreme pairs."""
    body = generators_from_radii(radii)
    points = simplex_points()
    measured = circumradius(points=points, body=body, tolerance=tolerance).radius
    lower = max(
        circumradius(points=points[[index - 1 for index in triple]], body=body, tolerance=tolerance).radius
        for triple in TRIPLES
    )
    inner = tuple(
        f"{first}{second}"
        for first, second in PAIRS
        if pair_circumradius(first=points[first - 1], second=points[second - 1], body=body)
        < radii.pair(first, second) - VERDICT_SLACK
    )
    return measured, lower, inner


def _verdict(
    measured: float, lower: float, upper: float | None, *, coefficients_valid: bool
) -> ConjectureVerdict:
    """Classifies a trial from its measurements."""
    if upper is not None and lower - VERDICT_SLACK <= measured <= upper + VERDICT_SLACK:
        return ConjectureVerdict.CONSISTENT
    if not coefficients_valid:
        return ConjectureVerdict.SYSTEM_INFEASIBLE
    if upper is None:
        return ConjectureVerdict.BOUND_UNDEFINED
    return ConjectureVerdict.BOUND_VIOLATED


def conjecture_trial(radii: FourPointRadii) -> ConjectureTrial:
    """Runs a single conjecture trial for the input pair radii.

    Notes:
        Trials that appear to violate the bound are re-measured with the tightened solver tolerance before the verdict
        is reported.

    Raises:
        PreconditionViolatedError: If the radii violate the pairwise triangle inequalities.
    """
    if not pairwise_feasible4(radii):
        message = (
            f"Unable to run the conjecture trial. The radii {radii.to_dict()} violate the pairwise triangle "
            f"inequalities."
        )
        console.error(message=message, error=PreconditionViolatedError)
        raise PreconditionViolatedError(message)  # pragma: no cover

    measured, lower, inner = _measure(radii=radii, tolerance=None)
    _, upper = printed_values(radii)

    # A singular system means the assumed face contacts cannot hold.
    system: FaceSystemSolution | None = None
    try:
        system = solve_face_system(radii)
    except SingularSystemError:
        console.echo(message=f"The face system is singular for the radii {radii.to_dict()}.", level=LogLevel.WARNING)
    system_radius = None if system is None else system.radius
    valid = system is not None and system.coefficients_valid

    verdict = _verdict(measured=measured, lower=lower, upper=upper, coefficients_valid=valid)
    reverified = False
    if verdict is ConjectureVerdict.BOUND_VIOLATED:
        measured, lower, inner = _measure(radii=radii, tolerance=TIGHT_TOLERANCE)
        verdict = _verdict(measured=measured, lower=lower, upper=upper, coefficients_valid=valid)
        reverified = True
        console.echo(
            message=(
                f"Conjecture trial for the radii {radii.to_dict()} re-verified at the tightened tolerance: measured "
                f"R1234 = {measured}, bounds [{lower}, {upper}], verdict '{verdict}'."
            ),
            level=LogLevel.WARNING,
        )

    return ConjectureTrial(
        radii=radii,
        measured_r1234=measured,
        lower=lower,
        upper=upper,
        verdict=verdict,
        system_radius=system_radius,
        coefficients_valid=valid,
        inner_pairs=inner,
        reverified=reverified,
    )


def sample_radii(generator: np.random.Generator) -> FourPointRadii:
    """Samples pair radii log-uniformly from [0.5, 2], rejecting draws that violate the pairwise triangle
    inequalities."""
    low, high = np.log(RADIUS_RANGE[0]), np.log(RADIUS_RANGE[1])
    while True:
        radii = FourPointRadii(*(float(value) for value in np.exp(generator.uniform(low, high, size=6))))
        if pairwise_feasible4(radii):
            return radii


def _configure_worker(echo: bool) -> None:  # pragma: no cover
    """Mirrors the console state of the parent process in a worker process."""
    if echo and not console.enabled:
        console.enable()
    elif not echo and console.enabled:
        console.disable()


def _run_trial(index: int, seed: np.random.SeedSequence) -> tuple[int, ConjectureTrial]:
    """Runs the trial with the given index. Trial 0 always uses equal radii."""
    radii = FourPointRadii.uniform() if index == 0 else sample_radii(generator=np.random.default_rng(seed))
    return index, conjecture_trial(radii)


@dataclass(frozen=True)
class ConjectureSummary:
    """Stores the aggregated outcome of a conjecture sampling run."""

    count: int
    """The number of trials."""
    seed: int
    """The root seed of the run."""
    verdicts: dict[str, int]
    """The number of trials per verdict."""
    measured_minus_lower: tuple[float, float]
    """The minimum and maximum of (measured R₁₂₃₄ - triple lower bound) over all trials."""
    upper_minus_measured: tuple[float, float] | None
    """The minimum and maximum of (printed bound - measured R₁₂₃₄) over trials with a defined bound."""
    system_radius_error: float | None
    """The largest |1 / scale - measured R₁₂₃₄| over trials with valid face weights, or None if no trial has them."""
    upper_minus_system_radius: tuple[float, float] | None
    """The minimum and maximum of (printed bound - 1 / scale) over trials with valid face weights and a defined bound.
    A nonzero spread shows that the printed bound differs from the radius the face system implies."""
    flagged: tuple[ConjectureTrial, ...]
    """Every trial whose verdict is not consistent, in trial order."""
    digest: str
    """The xxHash3-128 digest of the JSON-lines dump of all trials, for byte-identity checks."""


def conjecture_sample(
    count: int,
    seed: int = 1,
    *,
    workers: int | None = None,
    progress: bool = False,
    output_path: Path | None = None,
) -> ConjectureSummary:
    """Runs independent conjecture trials with reproducible per-trial seeds and aggregates their verdicts.

    Notes:
        Per-trial seeds are spawned from the root seed, so results do not depend on the number of workers or on the
        order in which trials complete. Trial 0 always uses equal radii.

    Args:
        count: The number of trials. Must be at least 1.
        seed: The root seed.
        workers: The number of worker processes. If None, uses all available CPU cores. A value of 1 runs the trials
            in the calling process.
        progress: Determines whether to display a progress bar.
        output_path: The optional path of the JSON-lines file to which every trial is written.

    Returns:
        The run summary.
    """
    if count < 1:
        message = f"Unable to sample the conjecture. The trial count must be at least 1, but got {count}."
        console.error(message=message, error=ValueError)
        raise ValueError(message)  # pragma: no cover

    if workers is None:
        workers = max(1, os.cpu_count() or 1)

    timer = PrecisionTimer("s")
    timer.reset()
    seeds = np.random.SeedSequence(seed).spawn(count)

    results: list[tuple[int, ConjectureTrial]] = []
    if workers == 1:
        results = [
            _run_trial(index, child)
            for index, child in tqdm(
                enumerate(seeds), total=count, desc="Sampling the conjecture", unit="trial", disable=not progress
            )
        ]
    else:
        with ProcessPoolExecutor(
            max_workers=workers, initializer=_configure_worker, initargs=(console.enabled,)
        ) as executor:
            futures = [executor.submit(_run_trial, index, child) for index, child in enumerate(seeds)]
            with tqdm(total=count, desc="Sampling the conjecture", unit="trial", disable=not progress) as pbar:
                for future in as_completed(futures):
                    results.append(future.result())
                    pbar.update(1)

    trials = [trial for _, trial in sorted(results, key=lambda item: item[0])]
    lines = dump_lines(trials)
    digest = xxhash.xxh3_128(lines.encode("utf-8")).hexdigest()
    if output_path is not None:
        ensure_directory_exists(output_path)
        output_path.write_text(lines, encoding="utf-8")

    verdicts = {verdict.value: 0 for verdict in ConjectureVerdict}
    for trial in trials:
        verdicts[trial.verdict.value] += 1
    lower_gaps = [trial.measured_r1234 - trial.lower for trial in trials]
    upper_gaps = [trial.upper - trial.measured_r1234 for trial in trials if trial.upper is not None]
    system_errors: list[float] = []
    system_gaps: list[float] = []
    for trial in trials:
        if not trial.coefficients_valid or trial.system_radius is None:
            continue
        system_errors.append(abs(trial.system_radius - trial.measured_r1234))
        if trial.upper is not None:
            system_gaps.append(trial.upper - trial.system_radius)

    console.echo(
        message=(
            f"Conjecture sampling: finished {count} trials in {timer.elapsed} seconds. Verdicts: "
            f"{dumps(verdicts, indent=None)}."
        ),
        level=LogLevel.SUCCESS,
    )
    return ConjectureSummary(
        count=count,
        seed=seed,
        verdicts=verdicts,
        measured_minus_lower=(min(lower_gaps), max(lower_gaps)),
        upper_minus_measured=(min(upper_gaps), max(upper_gaps)) if upper_gaps else None,
        system_radius_error=max(system_errors) if system_errors else None,
        upper_minus_system_radius=(min(system_gaps), max(system_gaps)) if system_gaps else None,
        flagged=tuple(trial for trial in trials if trial.verdict is not ConjectureVerdict.CONSISTENT),
        digest=digest,
    )
