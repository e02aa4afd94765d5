"""Contains tests for the diversity tables, metric diversities, and induced diversities provided by the diversities
package."""

import numpy as np
import pytest

from banach_diversities.geometry import SymmetricPolytope, random_symmetric_polytope
from banach_diversities.exceptions import NotAMetricError, TooManyPointsError, IncompleteTableError
from banach_diversities.containment import circumradius
from banach_diversities.diversities import (
    AxiomId,
    MetricTable,
    DiversityTable,
    subset_key,
    check_axioms,
    check_metric,
    sum_diversity,
    induced_metric,
    mixing_witness,
    induced_diversity,
    diameter_diversity,
    check_sublinear_samples,
)


@pytest.fixture
def triangle_metric() -> MetricTable:
    """Creates the 3-4-5 triangle metric over the labels a, b, and c."""
    return MetricTable.from_pairs(ground=("a", "b", "c"), pairs={"a,b": 3.0, "a,c": 4.0, "b,c": 5.0})


@pytest.fixture
def square() -> SymmetricPolytope:
    """Creates the unit ball of the maximum norm."""
    return SymmetricPolytope(generators=np.array([[1.0, 1.0], [1.0, -1.0]]))


def test_subset_key_is_order_independent() -> None:
    """Verifies that subset keys are the sorted labels joined by commas."""
    assert subset_key(("x3", "x1", "x2")) == "x1,x2,x3"
    assert subset_key(()) == ""


def test_diversity_table_normalizes_keys() -> None:
    """Verifies that the table addresses subsets independently of the label order used in the keys."""
    table = DiversityTable(ground=("x1", "x2"), values={"x1": 0.0, "x2": 0.0, "x2, x1": 1.5})

    assert table.values == {"x1": 0.0, "x2": 0.0, "x1,x2": 1.5}
    assert table.value(("x2", "x1")) == 1.5
    assert table.value(()) == 0.0
    assert DiversityTable.from_dict(table.to_dict()).values == table.values


@pytest.mark.parametrize(
    "ground, values",
    [
        (("x1", "x1"), {}),
        (("x1", "x2"), {"x1,x3": 1.0}),
        (("x1", "x2"), {"x1,x2": 1.0, "x2,x1": 1.0}),
        (("x1", "x2"), {"x1,x2": np.inf}),
    ],
)
def test_diversity_table_rejects_malformed_input(ground, values) -> None:
    """Verifies that repeated labels, unknown labels, duplicated subsets, and non-finite values are rejected."""
    with pytest.raises(ValueError):
        DiversityTable(ground=ground, values=values)


def test_diversity_table_reports_missing_values() -> None:
    """Verifies that reading or checking an incomplete table raises IncompleteTableError."""
    table = DiversityTable(ground=("x1", "x2"), values={"x1": 0.0, "x2": 0.0})
    with pytest.raises(IncompleteTableError) as exc_info:
        table.value(("x1", "x2"))
    assert "x1,x2" in str(exc_info.value)
    with pytest.raises(IncompleteTableError):
        check_axioms(table=table)


def test_check_axioms_accepts_valid_table() -> None:
    """Verifies that a valid three-point diversity passes the exhaustive axiom check."""
    report = check_axioms(table=DiversityTable.from_three_point(d12=2.0, d13=2.0, d23=1.0, d123=2.5))

    assert report.ok
    assert report.exhaustive
    assert report.violation_count == 0


def test_check_axioms_detects_d1_violation() -> None:
    """Verifies that a nonzero singleton value and a zero pair value are reported as D1 violations."""
    table = DiversityTable.from_three_point(d12=1.0, d13=1.0, d23=1.0, d123=1.5)
    values = dict(table.values)
    values["x1"] = 0.5
    report = check_axioms(table=DiversityTable(ground=table.ground, values=values))

    assert not report.ok
    d1 = [violation for violation in report.violations if violation.axiom is AxiomId.D1]
    assert d1[0].subsets == (("x1",),)
    assert d1[0].lhs == 0.5


def test_check_axioms_detects_d2_and_monotonicity_violations() -> None:
    """Verifies that a triple value above the sum of two pair values breaks D2 and that a triple value below a pair
    value breaks monotonicity."""
    too_large = check_axioms(table=DiversityTable.from_three_point(d12=1.0, d13=1.0, d23=1.0, d123=5.0))
    assert not too_large.ok
    assert AxiomId.D2 in {violation.axiom for violation in too_large.violations}

    too_small = check_axioms(table=DiversityTable.from_three_point(d12=3.0, d13=1.0, d23=3.0, d123=2.0))
    assert not too_small.ok
    assert AxiomId.MONO in {violation.axiom for violation in too_small.violations}


def test_check_axioms_samples_large_grounds() -> None:
    """Verifies that ground sets above the exhaustive limit are checked by sampling."""
    ground = tuple(f"p{index}" for index in range(7))
    points = np.random.default_rng(0).standard_normal((7, 2))
    distances = np.linalg.norm(points[:, np.newaxis, :] - points[np.newaxis, :, :], axis=2)
    table = diameter_diversity(MetricTable(ground=ground, distances=distances))

    report = check_axioms(table=table, trials=500, seed=1)
    assert not report.exhaustive
    assert report.ok


def test_check_metric_accepts_metric(triangle_metric) -> None:
    """Verifies that a valid metric passes the metric check."""
    check_metric(metric=triangle_metric)
    assert triangle_metric.distance("c", "b") == 5.0


@pytest.mark.parametrize(
    "distances, fragment",
    [
        ([[0.0, 1.0, 1.0], [2.0, 0.0, 1.0], [1.0, 1.0, 0.0]], "differs"),
        ([[0.0, 0.0, 1.0], [0.0, 0.0, 1.0], [1.0, 1.0, 0.0]], "positive"),
        ([[0.0, 1.0, 3.0], [1.0, 0.0, 1.0], [3.0, 1.0, 0.0]], "triangle inequality"),
    ],
)
def test_check_metric_rejects_non_metrics(distances, fragment) -> None:
    """Verifies that asymmetric, degenerate, and non-triangular distance tables are rejected."""
    metric = MetricTable(ground=("a", "b", "c"), distances=np.array(distances))
    with pytest.raises(NotAMetricError) as exc_info:
        check_metric(metric=metric)
    assert fragment in str(exc_info.value)


def test_metric_table_requires_all_pairs() -> None:
    """Verifies that from_pairs() requires a distance for every pair."""
    with pytest.raises(ValueError) as exc_info:
        MetricTable.from_pairs(ground=("a", "b", "c"), pairs={"a,b": 1.0, "a,c": 1.0})
    assert "all 3 pairs" in str(exc_info.value)


def test_diameter_and_sum_diversities(triangle_metric) -> None:
    """Verifies the values of the diameter and sum diversities and that both satisfy the diversity axioms."""
    diameter = diameter_diversity(triangle_metric)
    total = sum_diversity(triangle_metric)

    assert diameter.value(("a",)) == 0.0
    assert diameter.value(("a", "c")) == 4.0
    assert diameter.value(("a", "b", "c")) == 5.0
    assert total.value(("a", "b", "c")) == 12.0
    assert check_axioms(table=diameter).ok
    assert check_axioms(table=total).ok

    # Restricting either diversity to pairs recovers the metric.
    np.testing.assert_array_equal(induced_metric(diameter).distances, triangle_metric.distances)
    np.testing.assert_array_equal(induced_metric(total).distances, triangle_metric.distances)


def test_induced_diversity_in_square(square) -> None:
    """Verifies the values of the diversity induced by the square on three points."""
    points = np.array([[0.0, 0.0], [2.0, 0.0], [0.0, 4.0]])
    table = induced_diversity(points=points, body=square)

    assert table.ground == ("p1", "p2", "p3")
    assert table.value(("p1",)) == 0.0
    assert table.value(("p1", "p2")) == pytest.approx(1.0, abs=1e-9)
    assert table.value(("p1", "p3")) == pytest.approx(2.0, abs=1e-9)
    assert table.value(("p2", "p3")) == pytest.approx(2.0, abs=1e-9)
    assert table.value(("p1", "p2", "p3")) == pytest.approx(2.0, abs=1e-9)
    assert check_axioms(table=table).ok


def test_induced_diversity_of_random_body_is_a_diversity() -> None:
    """Verifies that a random body induces a table that passes the exhaustive axiom check."""
    generator = np.random.default_rng(4)
    body = random_symmetric_polytope(generator=generator, dimension=3)
    table = induced_diversity(points=generator.standard_normal((4, 3)), body=body, labels=("a", "b", "c", "d"))

    assert check_axioms(table=table).ok


def test_induced_diversity_rejects_invalid_input(square) -> None:
    """Verifies that too many points and mismatched labels are rejected."""
    with pytest.raises(TooManyPointsError):
        induced_diversity(points=np.random.default_rng(0).standard_normal((7, 2)), body=square)
    with pytest.raises(ValueError):
        induced_diversity(points=np.zeros((2, 2)) + np.eye(2), body=square, labels=("a",))


def test_mixing_witness_places_sets_concentrically(square) -> None:
    """Verifies that the mixing translations place the union of two sets inside the larger of their scaled bodies."""
    first = np.array([[0.0, 0.0], [2.0, 0.0]])
    second = np.array([[10.0, 10.0], [10.0, 13.0], [12.0, 11.0]])
    first_shift, second_shift = mixing_witness(first=first, second=second, body=square)

    union = np.vstack((first + first_shift, second + second_shift))
    radius = circumradius(points=union, body=square).radius
    assert radius <= max(circumradius(points=first, body=square).radius, 1.5) + 1e-9
    assert radius == pytest.approx(1.5, abs=1e-9)


def test_check_sublinear_samples(square) -> None:
    """Verifies that the sublinearity sampler finds no violations for a valid body."""
    report = check_sublinear_samples(body=square, trials=20, seed=3)
    assert report.trials == 20
    assert report.ok

    with pytest.raises(ValueError):
        check_sublinear_samples(body=square, trials=0)


def test_mixing_witness_over_random_sets_and_bodies() -> None:
    """Verifies that the mixing translations bound the circumradius of the union over random sets and bodies."""
    generator = np.random.default_rng(8)
    for _ in range(100):
        dimension = int(generator.integers(2, 4))
        body = random_symmetric_polytope(generator=generator, dimension=dimension)
        first = generator.standard_normal((int(generator.integers(1, 5)), dimension))
        second = 3.0 * generator.standard_normal((int(generator.integers(1, 5)), dimension))
        first_shift, second_shift = mixing_witness(first=first, second=second, body=body)

        union = np.vstack((first + first_shift, second + second_shift))
        bound = max(circumradius(points=first, body=body).radius, circumradius(points=second, body=body).radius)
        assert circumradius(points=union, body=body).radius <= bound + 1e-8 * (1.0 + bound)


def test_induced_diversities_of_random_bodies_satisfy_axioms() -> None:
    """Verifies that random bodies induce diversities on random point sets of up to five points."""
    generator = np.random.default_rng(12)
    for _ in range(20):
        dimension = int(generator.integers(2, 4))
        body = random_symmetric_polytope(generator=generator, dimension=dimension)
        points = generator.standard_normal((int(generator.integers(2, 6)), dimension))

        assert check_axioms(table=induced_diversity(points=points, body=body)).ok
