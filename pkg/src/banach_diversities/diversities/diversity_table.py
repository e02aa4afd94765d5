"""Provides finite diversity tables and the exhaustive (or sampled) verification of the diversity axioms.

A diversity assigns a nonnegative value to every finite subset of a ground set such that (D1) the value is zero
exactly on subsets with at most one element and (D2) δ(A ∪ C) ≤ δ(A ∪ B) + δ(B ∪ C) whenever B is nonempty. Tables
store one value per nonempty subset under a canonical key: the subset's labels sorted and joined by commas. The empty
set always has value 0 and is never stored.
"""

from enum import StrEnum
from typing import Any
from dataclasses import field, dataclass
from collections.abc import Mapping, Iterable

import numpy as np
from numpy.typing import NDArray
from ataraxis_base_utilities import console

from ..exceptions import IncompleteTableError

EXHAUSTIVE_GROUND_LIMIT: int = 6
"""The largest ground set size for which the triangle-type axiom is checked over all subset triples."""

DEFAULT_SAMPLE_TRIALS: int = 10_000
"""The number of random subset triples checked for ground sets larger than the exhaustive limit."""

AXIOM_SLACK: float = 1e-9
"""The relative slack of the axiom checks, scaled by 1 + the largest table value."""

_REPORTED_VIOLATIONS: int = 100
"""The largest number of violation records kept in a report. The report still counts every violation."""


class AxiomId(StrEnum):
    """Defines the axioms (and derived properties) verified for diversity tables."""

    D1 = "D1"
    """The value is zero exactly on subsets with at most one element."""
    D2 = "D2"
    """The triangle-type inequality δ(A ∪ C) ≤ δ(A ∪ B) + δ(B ∪ C) for nonempty B."""
    MONO = "MONO"
    """Monotonicity under inclusion. Implied by D1 and D2 and reported separately to aid debugging."""


@dataclass(frozen=True)
class AxiomViolation:
    """Stores a single violated axiom instance together with its witness subsets."""

    axiom: AxiomId
    """The violated axiom."""
    subsets: tuple[tuple[str, ...], ...]
    """The witness subsets. D1 uses one subset, D2 uses (A, B, C), and MONO uses (smaller, larger)."""
    lhs: float
    """The left-hand side of the violated inequality (for D1, the offending value)."""
    rhs: float
    """The right-hand side of the violated inequality (for D1, the required value)."""


@dataclass(frozen=True)
class AxiomReport:
    """Stores the outcome of an axiom check."""

    violations: tuple[AxiomViolation, ...] = ()
    """The recorded violations, at most 100 of them."""
    violation_count: int = 0
    """The total number of detected violations."""
    exhaustive: bool = True
    """Determines whether the D2 check enumerated every subset triple (True) or sampled random triples (False)."""

    @property
    def ok(self) -> bool:
        """Returns True if no violation was detected."""
        return self.violation_count == 0


def subset_key(labels: Iterable[str]) -> str:
    """Returns the canonical table key of the subset formed by the input labels."""
    return ",".join(sorted(labels))


@dataclass(frozen=True)
class DiversityTable:
    """Stores the values of a diversity (or candidate diversity) on the nonempty subsets of a finite labeled ground set.

    Notes:
        Keys passed at construction are normalized to the canonical form, so "x2,x1" and "x1,x2" address the same
        subset. Construction does not verify totality or the axioms: use check_axioms() for that.
    """

    ground: tuple[str, ...]
    """The ordered labels of the ground set."""
    values: Mapping[str, float] = field(default_factory=dict)
    """The subset values keyed by canonical subset keys."""

    def __post_init__(self) -> None:
        """Normalizes the subset keys and verifies that every key references known, distinct labels."""
        ground = tuple(str(label) for label in self.ground)
        if len(set(ground)) != len(ground) or any("," in label or not label.strip() for label in ground):
            message = (
                f"Unable to construct the DiversityTable instance. Ground labels must be distinct, nonempty, and "
                f"comma-free, but got {list(ground)}."
            )
            console.error(message=message, error=ValueError)
            raise ValueError(message)  # pragma: no cover

        known = set(ground)
        normalized: dict[str, float] = {}
        for key, value in self.values.items():
            labels = [label.strip() for label in str(key).split(",")]
            if len(set(labels)) != len(labels) or not set(labels) <= known:
                message = (
                    f"Unable to construct the DiversityTable instance. The subset key '{key}' repeats a label or "
                    f"references labels outside the ground set {list(ground)}."
                )
                console.error(message=message, error=ValueError)
                raise ValueError(message)  # pragma: no cover
            canonical = subset_key(labels)
            number = float(value)
            if canonical in normalized or not np.isfinite(number):
                message = (
                    f"Unable to construct the DiversityTable instance. The subset '{canonical}' is listed more than "
                    f"once or has a non-finite value."
                )
                console.error(message=message, error=ValueError)
                raise ValueError(message)  # pragma: no cover
            normalized[canonical] = number

        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "values", normalized)

    def value(self, labels: Iterable[str]) -> float:
        """Returns the value of the subset formed by the input labels. The empty subset has value 0.

        Raises:
            IncompleteTableError: If the table stores no value for the subset.
        """
        labels = tuple(labels)
        if not labels:
            return 0.0
        key = subset_key(labels)
        if key not in self.values:
            message = f"Unable to read the diversity table. No value is stored for the subset '{key}'."
            console.error(message=message, error=IncompleteTableError)
            raise IncompleteTableError(message)  # pragma: no cover
        return self.values[key]

    def subset_labels(self, mask: int) -> tuple[str, ...]:
        """Returns the ground labels selected by the input bitmask, in ground order."""
        return tuple(label for bit, label in enumerate(self.ground) if mask >> bit & 1)

    def value_array(self) -> NDArray[np.float64]:
        """Returns the table values indexed by subset bitmask over the ground order (index 0 is the empty set).

        Raises:
            IncompleteTableError: If any nonempty subset of the ground set has no stored value.
        """
        size = len(self.ground)
        array = np.zeros(1 << size)
        missing = []
        for mask in range(1, 1 << size):
            key = subset_key(self.subset_labels(mask))
            if key in self.values:
                array[mask] = self.values[key]
            else:
                missing.append(key)
        if missing:
            preview = ", ".join(f"'{key}'" for key in missing[:5])
            message = (
                f"Unable to evaluate the diversity table. It stores no value for {len(missing)} nonempty subsets of "
                f"the ground set, including {preview}."
            )
            console.error(message=message, error=IncompleteTableError)
            raise IncompleteTableError(message)  # pragma: no cover
        return array

    @classmethod
    def from_three_point(
        cls, d12: float, d13: float, d23: float, d123: float, labels: tuple[str, str, str] = ("x1", "x2", "x3")
    ) -> "DiversityTable":
        """Builds a three-point table from its pair and triple values. Singletons receive the value 0."""
        first, second, third = labels
        return cls(
            ground=labels,
            values={
                first: 0.0,
                second: 0.0,
                third: 0.0,
                subset_key((first, second)): d12,
                subset_key((first, third)): d13,
                subset_key((second, third)): d23,
                subset_key(labels): d123,
            },
        )

    def to_dict(self) -> dict[str, Any]:
        """Returns the JSON-compatible description {"ground": [...], "values": {...}} of the table."""
        return {"ground": list(self.ground), "values": dict(self.values)}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "DiversityTable":
        """Builds the table from its JSON-compatible description."""
        return cls(ground=tuple(data["ground"]), values=dict(data["values"]))


def _masks_size(masks: NDArray[np.int64]) -> NDArray[np.int64]:
    """Returns the number of set bits of every input bitmask."""
    return np.bitwise_count(masks).astype(np.int64)


def check_axioms(
    table: DiversityTable, *, trials: int = DEFAULT_SAMPLE_TRIALS, seed: int = 0
) -> AxiomReport:
    """Verifies the diversity axioms for the input table.

    Notes:
        D1 and monotonicity are always checked over every subset (monotonicity through single-element removals, which
        implies it for every inclusion). D2 is checked over every triple (A, B, C) of subsets with nonempty B when the
        ground set has at most 6 elements. Larger ground sets are checked on 'trials' random triples drawn with the
        given seed.

    Args:
        table: The table to verify.
        trials: The number of random triples checked for ground sets above the exhaustive limit.
        seed: The seed of the random triple generator.

    Returns:
        The axiom report.

    Raises:
        IncompleteTableError: If any nonempty subset of the ground set has no stored value.
    """
    values = table.value_array()
    size = len(table.ground)
    masks = np.arange(values.size, dtype=np.int64)
    slack = AXIOM_SLACK * (1.0 + float(np.abs(values).max(initial=0.0)))
    violations: list[AxiomViolation] = []
    count = 0

    def record(violation: AxiomViolation) -> None:
        if len(violations) < _REPORTED_VIOLATIONS:
            violations.append(violation)

    # D1: zero on subsets of size ≤ 1, strictly positive on the rest.
    sizes = _masks_size(masks)
    small = sizes <= 1
    d1_failures = np.flatnonzero((small & (np.abs(values) > slack)) | (~small & (values <= slack)))
    for mask in d1_failures:
        count += 1
        record(
            AxiomViolation(
                axiom=AxiomId.D1,
                subsets=(table.subset_labels(int(mask)),),
                lhs=float(values[mask]),
                rhs=0.0,
            )
        )

    # MONO: removing one element never increases the value.
    for bit in range(size):
        larger = masks[(masks >> bit & 1) == 1]
        smaller = larger & ~(1 << bit)
        failures = np.flatnonzero(values[smaller] > values[larger] + slack)
        for position in failures:
            count += 1
            record(
                AxiomViolation(
                    axiom=AxiomId.MONO,
                    subsets=(
                        table.subset_labels(int(smaller[position])),
                        table.subset_labels(int(larger[position])),
                    ),
                    lhs=float(values[smaller[position]]),
                    rhs=float(values[larger[position]]),
                )
            )

    # D2: exhaustive over all triples for small grounds, sampled otherwise.
    exhaustive = size <= EXHAUSTIVE_GROUND_LIMIT
    if exhaustive:
        first, pivot, last = np.meshgrid(masks, masks[1:], masks, indexing="ij")
        first, pivot, last = first.ravel(), pivot.ravel(), last.ravel()
    else:
        generator = np.random.default_rng(seed)
        first = generator.integers(0, values.size, size=trials, dtype=np.int64)
        pivot = generator.integers(1, values.size, size=trials, dtype=np.int64)
        last = generator.integers(0, values.size, size=trials, dtype=np.int64)

    lhs = values[first | last]
    rhs = values[first | pivot] + values[pivot | last]
    failures = np.flatnonzero(lhs > rhs + slack)
    count += int(failures.size)
    for position in failures[: max(0, _REPORTED_VIOLATIONS - len(violations))]:
        record(
            AxiomViolation(
                axiom=AxiomId.D2,
                subsets=(
                    table.subset_labels(int(first[position])),
                    table.subset_labels(int(pivot[position])),
                    table.subset_labels(int(last[position])),
                ),
                lhs=float(lhs[position]),
                rhs=float(rhs[position]),
            )
        )

    return AxiomReport(violations=tuple(violations), violation_count=count, exhaustive=exhaustive)
