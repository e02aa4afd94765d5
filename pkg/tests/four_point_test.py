"""Contains tests for the four-point face system, the printed closed forms, and the conjecture harness provided by the
four_point, four_point_formulas, and conjecture modules."""

import json

import numpy as np
import pytest

from banach_diversities.exceptions import (
    SingularSystemError,
    ZeroDenominatorError,
    InvalidDiversityError,
    PreconditionViolatedError,
)
from banach_diversities.embeddings import (
    FourPointRadii,
    ConjectureVerdict,
    r1234_bound,
    face_system,
    sample_radii,
    coefficient_a,
    triple_bounds,
    printed_values,
    simplex_points,
    conjecture_trial,
    conjecture_sample,
    solve_face_system,
    pairwise_feasible4,
    compare_coefficient_a,
    generators_from_radii,
)


@pytest.fixture
def generic_radii() -> FourPointRadii:
    """Creates pairwise feasible radii without any symmetry."""
    return FourPointRadii(r12=1.0, r13=1.2, r14=0.9, r23=1.1, r24=1.3, r34=1.05)


def test_four_point_radii_accessors() -> None:
    """Verifies the pair accessors, the dictionary form, and the validation of the radii."""
    radii = FourPointRadii(1.0, 2.0, 3.0, 4.0, 5.0, 6.0)

    assert radii.pair(3, 1) == 2.0
    assert radii.pair(2, 4) == 5.0
    assert FourPointRadii.from_dict(radii.to_dict()) == radii
    assert radii.scaled(2.0).values() == (2.0, 4.0, 6.0, 8.0, 10.0, 12.0)

    with pytest.raises(InvalidDiversityError):
        FourPointRadii(1.0, 1.0, 1.0, 1.0, 1.0, -1.0)


def test_pairwise_feasible4() -> None:
    """Verifies the twelve triangle inequalities of the pair radii."""
    assert pairwise_feasible4(FourPointRadii.uniform())
    assert not pairwise_feasible4(FourPointRadii(5.0, 1.0, 1.0, 1.0, 1.0, 1.0))


def test_generators_from_radii() -> None:
    """Verifies that the generator body is three-dimensional and spanned by the normalized simplex edges."""
    body = generators_from_radii(FourPointRadii.uniform(2.0))
    points = simplex_points()

    assert body.dim == 3
    assert body.generators.shape == (6, 3)
    np.testing.assert_allclose(body.generators[0], (points[0] - points[1]) / 4.0)


def test_triple_bounds_for_equal_radii() -> None:
    """Verifies that every triple of equal pair radii has the interval [1, 4/3]."""
    bounds = triple_bounds(FourPointRadii.uniform())

    assert len(bounds) == 4
    for low, high in bounds.values():
        assert low == 1.0
        assert high == pytest.approx(4.0 / 3.0)


def test_face_system_for_equal_radii() -> None:
    """Verifies that equal radii produce the scale 2/3 and face weights 1/3."""
    matrix, rhs = face_system(FourPointRadii.uniform())
    assert matrix.shape == (12, 12)
    assert rhs.shape == (12,)

    solution = solve_face_system(FourPointRadii.uniform())
    assert solution.scale == pytest.approx(2.0 / 3.0, abs=1e-12)
    assert solution.radius == pytest.approx(1.5, abs=1e-12)
    np.testing.assert_allclose(solution.coefficients, 1.0 / 3.0, atol=1e-12)
    np.testing.assert_allclose((solution.x0, solution.y0, solution.z0), (-1.0 / 6.0, -1.0 / 6.0, 0.5), atol=1e-12)
    assert solution.coefficients_valid
    assert solution.residual < 1e-12


def test_face_system_scaling(generic_radii) -> None:
    """Verifies that scaling all radii by t scales the solved scale by 1/t and keeps the face weights."""
    solution = solve_face_system(generic_radii)
    scaled = solve_face_system(generic_radii.scaled(2.0))

    assert scaled.scale == pytest.approx(solution.scale / 2.0, rel=1e-9)
    np.testing.assert_allclose(scaled.coefficients, solution.coefficients, rtol=1e-9, atol=1e-12)


def test_face_system_residual_over_random_radii() -> None:
    """Verifies that the solved face system satisfies all twelve equations over random radii."""
    generator = np.random.default_rng(21)
    solved = 0
    for _ in range(100):
        radii = sample_radii(generator=generator)
        try:
            solution = solve_face_system(radii)
        except SingularSystemError:
            continue
        solved += 1
        matrix, rhs = face_system(radii)
        vector = np.array([solution.x0, solution.y0, solution.z0, solution.scale, *solution.coefficients])
        limit = 1e-10 * (1.0 + np.abs(matrix).max() * np.abs(vector).max() + np.abs(rhs).max())

        assert np.abs(matrix @ vector - rhs).max() <= limit
        assert solution.residual <= limit

    assert solved >= 90


def test_printed_values_for_equal_radii() -> None:
    """Verifies that the printed weight is 3 and the printed bound is undefined when all radii are equal."""
    radii = FourPointRadii.uniform()

    assert printed_values(radii) == (3.0, None)
    assert coefficient_a(radii) == 3.0
    with pytest.raises(ZeroDenominatorError) as exc_info:
        r1234_bound(radii)
    assert "vanishes" in str(exc_info.value)


def test_printed_weight_at_equal_radii() -> None:
    """Verifies the comparison of the printed weight 3 with the solved weight 1/3 at equal radii."""
    comparison = compare_coefficient_a(FourPointRadii.uniform())

    assert comparison.printed == 3.0
    assert comparison.solved == pytest.approx(1.0 / 3.0, abs=1e-12)
    assert comparison.relative_error == pytest.approx(8.0, rel=1e-9)
    assert comparison.closest_relative_error == pytest.approx(8.0, rel=1e-9)


def test_printed_weight_matches_no_solved_weight() -> None:
    """Verifies that the printed weight a disagrees with the solved weight a, its reciprocal, and all other solved
    weights over random radii."""
    generator = np.random.default_rng(6)
    errors = []
    for _ in range(200):
        radii = sample_radii(generator=generator)
        try:
            comparison = compare_coefficient_a(radii)
        except SingularSystemError:
            continue
        if comparison.printed is None or comparison.printed == 0.0:
            continue
        errors.append(comparison.relative_error)

        assert comparison.relative_error > 1e-8
        assert comparison.closest_relative_error > 1e-8
        assert abs(1.0 / comparison.printed - comparison.solved) > 1e-8 * abs(comparison.solved)

    # The mismatch is not round-off: the typical printed value is off by more than 10 percent.
    assert len(errors) >= 100
    assert float(np.median(errors)) > 0.1


def test_printed_bound_is_homogeneous(generic_radii) -> None:
    """Verifies that the printed bound is homogeneous of degree 1 in the radii."""
    bound = r1234_bound(generic_radii)
    assert r1234_bound(generic_radii.scaled(3.0)) == pytest.approx(3.0 * bound, rel=1e-9)


def test_conjecture_trial_for_equal_radii() -> None:
    """Verifies that equal radii produce the bound-undefined verdict with a valid face system."""
    trial = conjecture_trial(FourPointRadii.uniform())

    assert trial.verdict is ConjectureVerdict.BOUND_UNDEFINED
    assert trial.upper is None
    assert trial.coefficients_valid
    assert trial.system_radius == pytest.approx(1.5, abs=1e-12)
    assert trial.lower <= 4.0 / 3.0 + 1e-7
    assert trial.measured_r1234 >= trial.lower - 1e-7


def test_conjecture_trial_rejects_infeasible_radii() -> None:
    """Verifies that radii breaking the triangle inequalities are rejected."""
    with pytest.raises(PreconditionViolatedError):
        conjecture_trial(FourPointRadii(5.0, 1.0, 1.0, 1.0, 1.0, 1.0))


def test_sample_radii_range() -> None:
    """Verifies that sampled radii are feasible and lie in [0.5, 2]."""
    generator = np.random.default_rng(0)
    for _ in range(50):
        radii = sample_radii(generator=generator)
        assert pairwise_feasible4(radii)
        assert all(0.5 <= value <= 2.0 for value in radii.values())


def test_conjecture_sample_is_reproducible(tmp_path) -> None:
    """Verifies that sampling runs are reproducible and write one JSON line per trial."""
    output = tmp_path / "runs" / "trials.jsonl"
    first = conjecture_sample(count=4, seed=7, workers=1, output_path=output)
    second = conjecture_sample(count=4, seed=7, workers=1)

    assert first.digest == second.digest
    assert sum(first.verdicts.values()) == 4
    assert first.verdicts[ConjectureVerdict.BOUND_UNDEFINED.value] >= 1

    # Trial 0 always uses equal radii.
    lines = output.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 4
    assert json.loads(lines[0])["radii"] == FourPointRadii.uniform().to_dict()
    assert all(trial.verdict is not ConjectureVerdict.CONSISTENT for trial in first.flagged)


def test_conjecture_sample_does_not_depend_on_workers() -> None:
    """Verifies that the process pool produces the same trials as the sequential run."""
    sequential = conjecture_sample(count=3, seed=11, workers=1)
    parallel = conjecture_sample(count=3, seed=11, workers=2)

    assert sequential.digest == parallel.digest
    assert sequential.verdicts == parallel.verdicts


def test_conjecture_sample_rejects_empty_runs() -> None:
    """Verifies that at least one trial is required."""
    with pytest.raises(ValueError):
        conjecture_sample(count=0)


def test_system_radius_matches_measured_radius_and_printed_bound_does_not() -> None:
    """Verifies that 1 / scale equals the measured R1234 whenever the face weights are valid, while the printed bound
    departs from it and is violated on some of these trials."""
    generator = np.random.default_rng(13)
    gaps = []
    violated = 0
    for _ in range(30):
        trial = conjecture_trial(sample_radii(generator=generator))
        if not trial.coefficients_valid:
            continue
        assert trial.system_radius == pytest.approx(trial.measured_r1234, abs=1e-6)
        if trial.upper is not None:
            gaps.append(abs(trial.upper - trial.system_radius) / trial.system_radius)
        violated += trial.verdict is ConjectureVerdict.BOUND_VIOLATED

    assert len(gaps) >= 10
    assert max(gaps) > 0.1
    assert violated >= 1


def test_conjecture_summary_reports_system_radius_agreement() -> None:
    """Verifies that the summary reports the agreement of the system radius with the measured R1234."""
    summary = conjecture_sample(count=6, seed=1, workers=1)

    # Trial 0 uses equal radii, whose face weights are valid.
    assert summary.system_radius_error is not None
    assert summary.system_radius_error <= 1e-6
