"""Contains tests for the witness bodies provided by the witnesses module and the higher-dimensional probe provided by
the higher_dimension module."""

import numpy as np
import pytest

from banach_diversities.geometry import SymmetricPolytope, random_symmetric_polytope
from banach_diversities.embeddings import (
    SlabPair,
    ThreePointDiversity,
    banach_range,
    parallelogram,
    probe_triangle,
    hexagon_witness,
    random_triangle,
    higher_dim_probe,
    measure_triangle,
    witness_points,
    witness_for_target,
    planar_section_body,
)
from banach_diversities.exceptions import TargetOutOfRangeError, PreconditionViolatedError


@pytest.fixture
def isosceles() -> ThreePointDiversity:
    """Creates the three-point diversity with pair values (2, 2, 1)."""
    return ThreePointDiversity.from_values(2.0, 2.0, 1.0, 2.0)


def test_hexagon_witness_realizes_upper_bound(isosceles) -> None:
    """Verifies that the hexagon witness induces the pair values and the largest admissible triple value."""
    witness = hexagon_witness(isosceles)

    assert not witness.degenerate
    assert witness.body.generators.shape == (3, 2)
    measured = measure_triangle(points=witness_points(isosceles), body=witness.body)
    np.testing.assert_allclose(measured, (2.0, 2.0, 1.0, 16.0 / 7.0), atol=1e-8)


def test_hexagon_witness_flags_degenerate_pairs() -> None:
    """Verifies that pair values at the end of the feasible interval produce a degenerate witness."""
    witness = hexagon_witness(ThreePointDiversity.from_values(2.0, 1.0, 1.0, 2.0))

    assert witness.degenerate
    assert witness.body.to_polygon().vertex_count == 4


def test_hexagon_witness_rejects_infeasible_pairs() -> None:
    """Verifies that the witness requires pairwise feasible values."""
    with pytest.raises(PreconditionViolatedError):
        hexagon_witness(ThreePointDiversity.from_values(5.0, 1.0, 1.0, 5.0))


@pytest.mark.parametrize("orientation", list(SlabPair))
def test_parallelograms_contain_hexagon(isosceles, orientation) -> None:
    """Verifies that every parallelogram contains the hexagon witness and keeps the pair values."""
    polygon = parallelogram(isosceles, orientation)
    assert polygon is not None
    assert polygon.vertex_count == 4

    hexagon = hexagon_witness(isosceles).body
    assert all(polygon.contains(vertex) for vertex in hexagon.vertices())

    body = SymmetricPolytope.from_polygon(polygon)
    measured = measure_triangle(points=witness_points(isosceles), body=body)
    np.testing.assert_allclose(measured, (2.0, 2.0, 1.0, 2.0), atol=1e-8)


@pytest.mark.parametrize("fraction", [0.0, 0.3, 0.75, 1.0])
def test_witness_for_target_covers_interval(isosceles, fraction) -> None:
    """Verifies that the witness family realizes targets across the whole Banach interval."""
    low, high = banach_range(isosceles)
    target = low + fraction * (high - low)
    witness = witness_for_target(isosceles, target)

    assert witness.measured == pytest.approx(target, abs=1e-6)
    assert 0.0 <= witness.mixing <= 1.0
    measured = measure_triangle(points=witness_points(isosceles), body=witness.body)
    np.testing.assert_allclose(measured, (2.0, 2.0, 1.0, target), atol=1e-6)


def test_witness_for_target_uses_original_label_order() -> None:
    """Verifies that witness points follow the original labels of relabeled input."""
    diversity = ThreePointDiversity.from_values(1.0, 2.0, 2.0, 2.2)
    witness = witness_for_target(diversity, 2.2)

    measured = measure_triangle(points=witness_points(diversity), body=witness.body)
    np.testing.assert_allclose(measured, (1.0, 2.0, 2.0, 2.2), atol=1e-6)


def test_witness_for_target_rejects_out_of_range_targets(isosceles) -> None:
    """Verifies that targets outside the Banach interval are rejected."""
    with pytest.raises(TargetOutOfRangeError):
        witness_for_target(isosceles, 2.5)
    with pytest.raises(TargetOutOfRangeError):
        witness_for_target(isosceles, 1.5)


def test_random_triangle_is_nondegenerate() -> None:
    """Verifies that sampled triangles are three-dimensional and not collinear."""
    triangle = random_triangle(generator=np.random.default_rng(0))

    assert triangle.shape == (3, 3)
    assert np.linalg.matrix_rank(triangle[1:] - triangle[0]) == 2


def test_planar_section_body_preserves_planar_values(isosceles) -> None:
    """Verifies that lifting a planar body to a double pyramid keeps the values induced on planar triangles."""
    planar = hexagon_witness(isosceles).body
    lifted = planar_section_body(planar, apex_height=0.5)
    points = witness_points(isosceles)
    lifted_points = np.hstack((points, np.zeros((3, 1))))

    values, failed = probe_triangle(triangle=lifted_points, body=lifted)
    assert failed == ()
    np.testing.assert_allclose(values, measure_triangle(points=points, body=planar), atol=1e-8)


def test_probe_triangle_on_random_body() -> None:
    """Verifies that a random three-dimensional body induces planar-realizable values."""
    generator = np.random.default_rng(9)
    body = random_symmetric_polytope(generator=generator, dimension=3)
    values, failed = probe_triangle(triangle=random_triangle(generator=generator), body=body)

    assert failed == ()
    assert all(value > 0.0 for value in values)


def test_higher_dim_probe_finds_no_counterexamples() -> None:
    """Verifies that the probe reports no counterexamples on a small run."""
    report = higher_dim_probe(trials=10, seed=42)

    assert report.ok
    assert report.trials == 10
    assert report.seed == 42

    with pytest.raises(ValueError):
        higher_dim_probe(trials=0)


def test_witness_for_target_round_trip_over_random_values() -> None:
    """Verifies that witnesses for random pair values and random targets in the Banach interval reproduce all four
    values."""
    generator = np.random.default_rng(29)
    checked = 0
    while checked < 15:
        x, y, z = (float(value) for value in np.exp(generator.uniform(np.log(0.5), np.log(2.0), size=3)))
        if max(x, y, z) >= 0.95 * (x + y + z - max(x, y, z)):
            continue
        diversity = ThreePointDiversity.from_values(x, y, z, max(x, y, z))
        low, high = banach_range(diversity)
        target = float(generator.uniform(low, high))

        witness = witness_for_target(diversity, target)
        measured = measure_triangle(points=witness_points(diversity), body=witness.body)
        np.testing.assert_allclose(measured, (x, y, z, target), atol=1e-6)
        checked += 1
