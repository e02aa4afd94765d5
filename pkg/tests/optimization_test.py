"""Contains tests for the linear programming engine provided by the optimization package."""

import numpy as np
import pytest
from scipy.optimize import linprog

from banach_diversities.exceptions import NumericalFailureError
from banach_diversities.optimization import LpStatus, LinearProgram, solve


@pytest.fixture
def two_constraint_program() -> LinearProgram:
    """Creates the program: minimize -x - y subject to x + 2y ≤ 4, 3x + y ≤ 6, and x, y ≥ 0."""
    return LinearProgram(
        objective=np.array([-1.0, -1.0]),
        inequality_matrix=np.array([[1.0, 2.0], [3.0, 1.0]]),
        inequality_rhs=np.array([4.0, 6.0]),
    )


def test_solve_optimal_program(two_constraint_program) -> None:
    """Verifies that solve() finds the optimal vertex, the objective, and the dual multipliers of a small program."""
    solution = solve(two_constraint_program)

    assert solution.status is LpStatus.OPTIMAL
    assert solution.optimal
    np.testing.assert_allclose(solution.primal, [1.6, 1.2], atol=1e-10)
    assert solution.objective == pytest.approx(-2.8, abs=1e-10)
    np.testing.assert_allclose(solution.inequality_duals, [-0.4, -0.2], atol=1e-10)
    assert solution.equality_duals.size == 0


def test_strong_duality(two_constraint_program) -> None:
    """Verifies that the dual objective of an optimal solution matches the primal objective."""
    solution = solve(two_constraint_program)
    assert solution.dual_objective == pytest.approx(solution.objective, abs=1e-10)
    assert solution.dual_objective == pytest.approx(4.0 * -0.4 + 6.0 * -0.2, abs=1e-10)


def test_solve_is_deterministic(two_constraint_program) -> None:
    """Verifies that repeated solves of the same program produce identical results."""
    first = solve(two_constraint_program)
    second = solve(two_constraint_program)
    assert np.array_equal(first.primal, second.primal)
    assert first.objective == second.objective
    assert first.pivots == second.pivots


def test_solve_infeasible_program() -> None:
    """Verifies that a program with contradictory constraints is reported as infeasible."""
    # x = -1 together with x ≥ 0.
    program = LinearProgram(objective=np.array([1.0]), equality_matrix=np.array([[1.0]]), equality_rhs=np.array([-1.0]))
    solution = solve(program)

    assert solution.status is LpStatus.INFEASIBLE
    assert not solution.optimal
    assert solution.objective == np.inf
    assert np.all(np.isnan(solution.primal))
    assert np.isnan(solution.dual_objective)


def test_solve_unbounded_program() -> None:
    """Verifies that a program whose objective decreases without bound is reported as unbounded."""
    # Minimizes -x over the ray x = y ≥ 0.
    program = LinearProgram(
        objective=np.array([-1.0, 0.0]),
        equality_matrix=np.array([[1.0, -1.0]]),
        equality_rhs=np.array([0.0]),
    )
    solution = solve(program)

    assert solution.status is LpStatus.UNBOUNDED
    assert solution.objective == -np.inf


def test_exhausted_pivot_limit_raises(two_constraint_program, monkeypatch) -> None:
    """Verifies that the solver reports only three terminal states and raises once the pivot limit is exhausted."""
    assert {status.value for status in LpStatus} == {"optimal", "infeasible", "unbounded"}

    monkeypatch.setattr("banach_diversities.optimization.simplex.PIVOT_LIMIT", 0)
    with pytest.raises(NumericalFailureError) as exc_info:
        solve(two_constraint_program)
    assert "did not converge" in str(exc_info.value)


def test_solve_free_variable() -> None:
    """Verifies that variables outside the nonnegativity mask may take negative values."""
    program = LinearProgram(
        objective=np.array([1.0]),
        inequality_matrix=np.array([[-1.0]]),
        inequality_rhs=np.array([3.0]),
        nonnegative=np.array([False]),
    )
    solution = solve(program)

    assert solution.optimal
    assert solution.primal[0] == pytest.approx(-3.0, abs=1e-10)
    assert solution.objective == pytest.approx(-3.0, abs=1e-10)


@pytest.mark.parametrize(
    "kwargs, fragment",
    [
        ({"inequality_matrix": np.ones((2, 3)), "inequality_rhs": np.ones(2)}, "inequality_matrix"),
        ({"equality_matrix": np.ones((2, 2)), "equality_rhs": np.ones(3)}, "equality_rhs"),
        ({"nonnegative": np.array([True])}, "nonnegativity mask"),
        ({"inequality_matrix": np.array([[np.inf, 1.0]]), "inequality_rhs": np.ones(1)}, "finite"),
    ],
)
def test_linear_program_validation(kwargs, fragment) -> None:
    """Verifies that malformed programs are rejected at construction."""
    with pytest.raises(ValueError) as exc_info:
        LinearProgram(objective=np.array([1.0, 1.0]), **kwargs)
    assert fragment in str(exc_info.value)


@pytest.mark.parametrize("seed", [0, 1, 2, 3, 4])
def test_solve_matches_reference_solver(seed) -> None:
    """Verifies that solve() agrees with an independent solver on random feasible and bounded programs."""
    generator = np.random.default_rng(seed)
    rows, columns = 4, 9
    matrix = generator.standard_normal((rows, columns))

    # A nonnegative feasible point and positive costs keep the program feasible and bounded.
    feasible = generator.uniform(0.5, 2.0, size=columns)
    rhs = matrix @ feasible
    costs = generator.uniform(0.1, 1.0, size=columns)

    program = LinearProgram(objective=costs, equality_matrix=matrix, equality_rhs=rhs)
    solution = solve(program)
    reference = linprog(costs, A_eq=matrix, b_eq=rhs, bounds=(0, None), method="highs")

    assert reference.status == 0
    assert solution.optimal
    assert solution.objective == pytest.approx(reference.fun, rel=1e-7, abs=1e-9)
    np.testing.assert_allclose(matrix @ solution.primal, rhs, atol=1e-8)
    assert np.all(solution.primal >= -1e-9)
    assert solution.dual_objective == pytest.approx(solution.objective, rel=1e-7, abs=1e-9)
