"""Provides the dense two-phase tableau simplex solver used by every optimization routine in the library.

The solver targets the small programs that arise from containment problems (tens to a few hundred variables). It uses
Dantzig pricing for the first pivots and switches to Bland's rule afterward, which guarantees termination on degenerate
programs. Once an optimal basis is found, the primal solution and dual multipliers are recomputed directly from the
basis matrix and checked against feasibility and complementary slackness residual bounds.
"""

from enum import StrEnum
from dataclasses import field, dataclass

import numpy as np
from numpy.typing import NDArray
from ataraxis_base_utilities import console

from ..exceptions import NumericalFailureError

PIVOT_LIMIT: int = 10_000
"""The maximum number of pivots a single solve may perform before it is considered stalled."""

DANTZIG_PIVOTS: int = 100
"""The number of pivots that use Dantzig (most negative reduced cost) pricing before switching to Bland's rule."""

PHASE_ONE_THRESHOLD: float = 1e-8
"""The largest phase-one artificial objective value (relative to the right-hand side scale) that is still treated as
a feasible program."""

OPTIMALITY_TOLERANCE: float = 1e-9
"""The default reduced cost tolerance. A basis is optimal when no reduced cost falls below its negative."""

PRIMAL_RESIDUAL_LIMIT: float = 1e-8
"""The largest primal feasibility residual (relative to the right-hand side scale) accepted for an optimal solution."""

SLACKNESS_RESIDUAL_LIMIT: float = 1e-7
"""The largest complementary slackness or dual feasibility residual accepted for an optimal solution."""

_PIVOT_ELEMENT_TOLERANCE: float = 1e-9
"""The smallest tableau entry magnitude eligible to serve as a pivot element."""


class LpStatus(StrEnum):
    """Defines the terminal states of a linear program solve."""

    OPTIMAL = "optimal"
    """The program is feasible and bounded, and the reported solution is optimal."""
    INFEASIBLE = "infeasible"
    """The program's constraints admit no solution."""
    UNBOUNDED = "unbounded"
    """The objective decreases without bound over the feasible region."""


@dataclass(frozen=True, eq=False)
class LinearProgram:
    """Stores a linear program in the form: minimize c·v subject to A_eq·v = b_eq, A_ub·v ≤ b_ub, and v_j ≥ 0 for every
    variable marked as nonnegative.

    Notes:
        Omitted constraint blocks are treated as empty. When the nonnegativity mask is omitted, every variable is
        nonnegative. Variables outside the mask are free (unbounded in both directions).
    """

    objective: NDArray[np.float64]
    """The objective coefficient vector c."""
    equality_matrix: NDArray[np.float64] | None = None
    """The equality constraint matrix A_eq, one row per equality constraint."""
    equality_rhs: NDArray[np.float64] | None = None
    """The equality constraint right-hand side b_eq."""
    inequality_matrix: NDArray[np.float64] | None = None
    """The upper-bound (≤) constraint matrix A_ub, one row per inequality constraint."""
    inequality_rhs: NDArray[np.float64] | None = None
    """The upper-bound constraint right-hand side b_ub."""
    nonnegative: NDArray[np.bool_] | None = None
    """The boolean mask of variables constrained to be nonnegative."""

    def __post_init__(self) -> None:
        """Normalizes the stored arrays and verifies that the program is well-formed."""
        objective = np.asarray(self.objective, dtype=np.float64).reshape(-1)
        count = objective.size
        object.__setattr__(self, "objective", objective)

        for matrix_name, rhs_name in (("equality_matrix", "equality_rhs"), ("inequality_matrix", "inequality_rhs")):
            matrix = getattr(self, matrix_name)
            rhs = getattr(self, rhs_name)
            matrix = np.zeros((0, count)) if matrix is None else np.asarray(matrix, dtype=np.float64)
            rhs = np.zeros(0) if rhs is None else np.asarray(rhs, dtype=np.float64).reshape(-1)
            if matrix.ndim != 2 or matrix.shape[1] != count or matrix.shape[0] != rhs.size:  # noqa: PLR2004
                message = (
                    f"Unable to construct the LinearProgram instance. The '{matrix_name}' has shape {matrix.shape} and "
                    f"the '{rhs_name}' has {rhs.size} entries, but the program has {count} variables."
                )
                console.error(message=message, error=ValueError)
                raise ValueError(message)  # pragma: no cover
            object.__setattr__(self, matrix_name, matrix)
            object.__setattr__(self, rhs_name, rhs)

        mask = np.ones(count, dtype=np.bool_) if self.nonnegative is None else np.asarray(self.nonnegative, dtype=bool)
        if mask.shape != (count,):
            message = (
                f"Unable to construct the LinearProgram instance. The nonnegativity mask has shape {mask.shape}, but "
                f"the program has {count} variables."
            )
            console.error(message=message, error=ValueError)
            raise ValueError(message)  # pragma: no cover
        object.__setattr__(self, "nonnegative", mask)

        arrays = (objective, self.equality_matrix, self.equality_rhs, self.inequality_matrix, self.inequality_rhs)
        if not all(np.all(np.isfinite(array)) for array in arrays):
            message = "Unable to construct the LinearProgram instance. All coefficients must be finite."
            console.error(message=message, error=ValueError)
            raise ValueError(message)  # pragma: no cover

    @property
    def variable_count(self) -> int:
        """Returns the number of variables in the program."""
        return int(self.objective.size)


@dataclass(frozen=True, eq=False)
class LpSolution:
    """Stores the outcome of a linear program solve.

    Notes:
        Dual multipliers use the sensitivity convention: each multiplier is the rate of change of the optimal objective
        with respect to its constraint's right-hand side. Multipliers of ≤ rows are therefore nonpositive. For
        infeasible and unbounded programs, the primal and dual arrays are filled with NaN.
    """

    status: LpStatus
    """The terminal state of the solve."""
    primal: NDArray[np.float64]
    """The optimal variable values."""
    equality_duals: NDArray[np.float64]
    """The dual multipliers of the equality rows."""
    inequality_duals: NDArray[np.float64]
    """The dual multipliers of the ≤ rows."""
    objective: float
    """The optimal objective value (+inf for infeasible and -inf for unbounded programs)."""
    dual_objective: float = field(default=np.nan)
    """The dual objective b_eq·y_eq + b_ub·y_ub of the dual multipliers. For optimal solutions, it equals the primal
    objective up to solver round-off. NaN for infeasible and unbounded programs."""
    pivots: int = 0
    """The number of simplex pivots performed during both phases."""
    primal_residual: float = field(default=0.0)
    """The largest absolute violation of the constraints by the recomputed primal solution."""
    slackness_residual: float = field(default=0.0)
    """The largest absolute complementary slackness product of the recomputed primal and dual solutions."""

    @property
    def optimal(self) -> bool:
        """Returns True if the solve terminated with an optimal solution."""
        return self.status is LpStatus.OPTIMAL


def _pivot(tableau: NDArray[np.float64], basis: NDArray[np.int64], row: int, column: int) -> None:
    """Pivots the tableau in place so that the target column becomes the basic variable of the target row."""
    tableau[row] /= tableau[row, column]
    factors = tableau[:, column].copy()
    factors[row] = 0.0
    tableau -= np.outer(factors, tableau[row])
    basis[row] = column


def _iterate(
    tableau: NDArray[np.float64], basis: NDArray[np.int64], eligible: int, pivots: int, tolerance: float
) -> tuple[LpStatus, int]:
    """Runs simplex pivots on the tableau until it reaches an optimal or unbounded state.

    The last tableau row holds the reduced costs and the last column holds the basic variable values. Only the first
    'eligible' columns may enter the basis.

    Args:
        tableau: The tableau to pivot in place.
        basis: The basic variable index of every constraint row, updated in place.
        eligible: The number of leading columns that may enter the basis.
        pivots: The number of pivots performed before this call.
        tolerance: The reduced cost tolerance used to detect optimality.

    Returns:
        A tuple of the terminal status (OPTIMAL or UNBOUNDED) and the updated pivot count.

    Raises:
        NumericalFailureError: If the pivot limit is exhausted before the tableau reaches a terminal state.
    """
    while True:
        reduced_costs = tableau[-1, :eligible]
        candidates = np.flatnonzero(reduced_costs < -tolerance)
        if candidates.size == 0:
            return LpStatus.OPTIMAL, pivots

        if pivots >= PIVOT_LIMIT:
            message = (
                f"Unable to solve the linear program. The simplex method did not converge after {PIVOT_LIMIT} pivots. "
                f"Perturb the input data and retry."
            )
            console.error(message=message, error=NumericalFailureError)
            raise NumericalFailureError(message)  # pragma: no cover

        # Dantzig pricing first, then Bland's rule (smallest eligible index) to rule out cycling.
        if pivots < DANTZIG_PIVOTS:
            column = int(candidates[np.argmin(reduced_costs[candidates])])
        else:
            column = int(candidates[0])

        entries = tableau[:-1, column]
        rows = np.flatnonzero(entries > _PIVOT_ELEMENT_TOLERANCE)
        if rows.size == 0:
            return LpStatus.UNBOUNDED, pivots

        ratios = np.maximum(tableau[rows, -1], 0.0) / entries[rows]
        best = ratios.min()
        tied = rows[ratios <= best + tolerance * (1.0 + abs(best))]
        row = int(tied[np.argmin(basis[tied])])

        _pivot(tableau=tableau, basis=basis, row=row, column=column)
        pivots += 1


def _failed_solution(status: LpStatus, program: LinearProgram, pivots: int) -> LpSolution:
    """Builds the solution record for infeasible and unbounded programs."""
    return LpSolution(
        status=status,
        primal=np.full(program.variable_count, np.nan),
        equality_duals=np.full(program.equality_rhs.size, np.nan),  # type: ignore[union-attr]
        inequality_duals=np.full(program.inequality_rhs.size, np.nan),  # type: ignore[union-attr]
        objective=np.inf if status is LpStatus.INFEASIBLE else -np.inf,
        pivots=pivots,
    )


def solve(program: LinearProgram, *, tolerance: float = OPTIMALITY_TOLERANCE) -> LpSolution:
    """Solves the input linear program with the two-phase dense tableau simplex method.

    Notes:
        The program is first converted to the standard form min ĉ·z, Â·z = b̂, z ≥ 0, by splitting free variables
        into differences of nonnegative parts and by adding one slack variable per ≤ row. Rows with negative
        right-hand sides are negated. Phase one drives an artificial basis to a feasible one, then removes artificial
        variables from the basis and drops redundant rows. Phase two optimizes the original objective.

        After phase two, the primal solution and the dual multipliers are recomputed by solving the basis systems
        directly, which removes the round-off accumulated by the tableau updates. The solve is deterministic:
        identical inputs always produce identical outputs.

    Args:
        program: The linear program to solve.
        tolerance: The reduced cost tolerance used to declare optimality. Smaller values request a stricter optimum.

    Returns:
        The solution record. Its status reports whether the program is optimal, infeasible, or unbounded.

    Raises:
        NumericalFailureError: If the pivot limit is exhausted, or if the recomputed optimal solution violates the
            feasibility or complementary slackness residual bounds.
    """
    equality_matrix: NDArray[np.float64] = program.equality_matrix  # type: ignore[assignment]
    inequality_matrix: NDArray[np.float64] = program.inequality_matrix  # type: ignore[assignment]
    nonnegative: NDArray[np.bool_] = program.nonnegative  # type: ignore[assignment]
    equality_count = equality_matrix.shape[0]
    inequality_count = inequality_matrix.shape[0]
    free = np.flatnonzero(~nonnegative)

    # Builds the standard form. Column layout: original variables, negative parts of free variables, slacks.
    constraint_matrix = np.vstack((equality_matrix, inequality_matrix))
    slack_block = np.vstack((np.zeros((equality_count, inequality_count)), np.eye(inequality_count)))
    standard_matrix = np.hstack((constraint_matrix, -constraint_matrix[:, free], slack_block))
    standard_cost = np.concatenate((program.objective, -program.objective[free], np.zeros(inequality_count)))
    standard_rhs = np.concatenate((program.equality_rhs, program.inequality_rhs))  # type: ignore[arg-type]

    row_signs = np.where(standard_rhs < 0.0, -1.0, 1.0)
    standard_matrix = standard_matrix * row_signs[:, np.newaxis]
    standard_rhs = standard_rhs * row_signs

    row_count, column_count = standard_matrix.shape
    rhs_scale = max(1.0, float(np.abs(standard_rhs).max(initial=0.0)))

    # Phase one: one artificial variable per row forms the starting basis.
    tableau = np.zeros((row_count + 1, column_count + row_count + 1))
    tableau[:row_count, :column_count] = standard_matrix
    tableau[:row_count, column_count : column_count + row_count] = np.eye(row_count)
    tableau[:row_count, -1] = standard_rhs
    tableau[-1, :column_count] = -standard_matrix.sum(axis=0)
    tableau[-1, -1] = -standard_rhs.sum()
    basis = np.arange(column_count, column_count + row_count, dtype=np.int64)

    _, pivots = _iterate(tableau=tableau, basis=basis, eligible=column_count, pivots=0, tolerance=tolerance)
    if -tableau[-1, -1] > PHASE_ONE_THRESHOLD * rhs_scale:
        return _failed_solution(status=LpStatus.INFEASIBLE, program=program, pivots=pivots)

    # Drives the remaining (zero-valued) artificial variables out of the basis. Rows without an eligible structural
    # pivot are linear combinations of the other rows and are dropped.
    kept_rows = np.ones(row_count, dtype=np.bool_)
    for row in range(row_count):
        if basis[row] < column_count:
            continue
        magnitudes = np.abs(tableau[row, :column_count])
        column = int(np.argmax(magnitudes))
        if magnitudes[column] > _PIVOT_ELEMENT_TOLERANCE:
            _pivot(tableau=tableau, basis=basis, row=row, column=column)
            pivots += 1
        else:
            kept_rows[row] = False

    # Phase two: removes artificial columns and prices the original objective.
    kept_indices = np.flatnonzero(kept_rows)
    basis = basis[kept_indices]
    tableau = np.vstack(
        (tableau[kept_indices][:, list(range(column_count)) + [-1]], np.zeros((1, column_count + 1)))
    )
    basic_costs = standard_cost[basis]
    tableau[-1, :column_count] = standard_cost - basic_costs @ tableau[:-1, :column_count]
    tableau[-1, -1] = -basic_costs @ tableau[:-1, -1]

    status, pivots = _iterate(tableau=tableau, basis=basis, eligible=column_count, pivots=pivots, tolerance=tolerance)
    if status is LpStatus.UNBOUNDED:
        return _failed_solution(status=status, program=program, pivots=pivots)

    # Recomputes the primal and dual solutions from the final basis.
    standard_solution = np.zeros(column_count)
    duals = np.zeros(row_count)
    if basis.size > 0:
        basis_matrix = standard_matrix[np.ix_(kept_indices, basis)]
        try:
            standard_solution[basis] = np.linalg.solve(basis_matrix, standard_rhs[kept_indices])
            duals[kept_indices] = np.linalg.solve(basis_matrix.T, standard_cost[basis])
        except np.linalg.LinAlgError:
            message = "Unable to solve the linear program. The optimal basis matrix is singular."
            console.error(message=message, error=NumericalFailureError)
            raise NumericalFailureError(message) from None  # pragma: no cover

    reduced_costs = standard_cost - standard_matrix.T @ duals
    cost_scale = max(1.0, float(np.abs(standard_cost).max(initial=0.0)))
    primal_residual = max(
        float(np.abs(standard_matrix @ standard_solution - standard_rhs).max(initial=0.0)),
        float(-standard_solution.min(initial=0.0)),
    )
    slackness_residual = float(np.abs(standard_solution * reduced_costs).max(initial=0.0))
    dual_violation = float(-reduced_costs.min(initial=0.0))
    if (
        primal_residual > PRIMAL_RESIDUAL_LIMIT * rhs_scale
        or slackness_residual > SLACKNESS_RESIDUAL_LIMIT * rhs_scale * cost_scale
        or dual_violation > SLACKNESS_RESIDUAL_LIMIT * cost_scale
    ):
        message = (
            f"Unable to solve the linear program. The optimal solution failed the residual checks: primal residual "
            f"{primal_residual:.3e}, complementary slackness residual {slackness_residual:.3e}, dual feasibility "
            f"violation {dual_violation:.3e}."
        )
        console.error(message=message, error=NumericalFailureError)
        raise NumericalFailureError(message)  # pragma: no cover

    # Maps the standard form back to the original variables and rows.
    count = program.variable_count
    primal = standard_solution[:count].copy()
    primal[free] -= standard_solution[count : count + free.size]
    original_duals = duals * row_signs
    equality_duals = original_duals[:equality_count]
    inequality_duals = original_duals[equality_count:]

    return LpSolution(
        status=LpStatus.OPTIMAL,
        primal=primal,
        equality_duals=equality_duals,
        inequality_duals=inequality_duals,
        objective=float(standard_cost @ standard_solution),
        dual_objective=float(
            program.equality_rhs @ equality_duals  # type: ignore[operator]
            + program.inequality_rhs @ inequality_duals  # type: ignore[operator]
        ),
        pivots=pivots,
        primal_residual=primal_residual,
        slackness_residual=slackness_residual,
    )

