"""Provides finite metric tables, the metric axiom check, and the diameter and sum diversities derived from metrics."""

from typing import Any
from itertools import combinations
from dataclasses import dataclass
from collections.abc import Mapping

import numpy as np
from numpy.typing import NDArray
from ataraxis_base_utilities import console

from ..exceptions import NotAMetricError
from .diversity_table import AXIOM_SLACK, DiversityTable, subset_key

MAXIMUM_DERIVED_GROUND: int = 16
"""The largest ground set for which metric-derived diversities are tabulated (the table has 2^n - 1 entries)."""


@dataclass(frozen=True, eq=False)
class MetricTable:
    """Stores a finite (candidate) metric as a symmetric distance matrix over a labeled ground set."""

    ground: tuple[str, ...]
    """The ordered labels of the ground set."""
    distances: NDArray[np.float64]
    """The (n, n) distance matrix indexed in ground order."""

    def __post_init__(self) -> None:
        """Validates the matrix shape and freezes the distance array."""
        ground = tuple(str(label) for label in self.ground)
        distances = np.array(self.distances, dtype=np.float64).reshape(len(ground), len(ground))
        if len(set(ground)) != len(ground) or not np.all(np.isfinite(distances)):
            message = (
                "Unable to construct the MetricTable instance. Ground labels must be distinct and all distances "
                "finite."
            )
            console.error(message=message, error=ValueError)
            raise ValueError(message)  # pragma: no cover
        distances.setflags(write=False)
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "distances", distances)

    def distance(self, first: str, second: str) -> float:
        """Returns the distance between the two labeled points."""
        return float(self.distances[self.ground.index(first), self.ground.index(second)])

    def pairs(self) -> dict[str, float]:
        """Returns the distances of all unordered pairs keyed by canonical pair keys. Single-point grounds yield {}."""
        return {
            subset_key((self.ground[i], self.ground[j])): float(self.distances[i, j])
            for i, j in combinations(range(len(self.ground)), 2)
        }

    @classmethod
    def from_pairs(cls, ground: tuple[str, ...], pairs: Mapping[str, float]) -> "MetricTable":
        """Builds the symmetric table from unordered pair distances keyed by 'a,b'. Missing pairs are an error."""
        index = {label: position for position, label in enumerate(ground)}
        distances = np.zeros((len(ground), len(ground)))
        seen = set()
        for key, value in pairs.items():
            labels = [label.strip() for label in key.split(",")]
            if len(labels) != 2 or labels[0] == labels[1] or not set(labels) <= index.keys():  # noqa: PLR2004
                message = f"Unable to build the MetricTable instance. '{key}' is not a pair of distinct ground labels."
                console.error(message=message, error=ValueError)
                raise ValueError(message)  # pragma: no cover
            first, second = index[labels[0]], index[labels[1]]
            distances[first, second] = distances[second, first] = float(value)
            seen.add(frozenset((first, second)))
        if len(seen) != len(ground) * (len(ground) - 1) // 2:
            message = (
                f"Unable to build the MetricTable instance. Expected distances for all "
                f"{len(ground) * (len(ground) - 1) // 2} pairs, but got {len(seen)}."
            )
            console.error(message=message, error=ValueError)
            raise ValueError(message)  # pragma: no cover
        return cls(ground=ground, distances=distances)

    def to_dict(self) -> dict[str, Any]:
        """Returns the JSON-compatible description {"ground": [...], "distances": {"a,b": d, ...}} of the table."""
        return {"ground": list(self.ground), "distances": self.pairs()}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "MetricTable":
        """Builds the table from its JSON-compatible description."""
        return cls.from_pairs(ground=tuple(data["ground"]), pairs=data["distances"])


def check_metric(metric: MetricTable) -> None:
    """Verifies that the input table is a metric: zero diagonal, positive symmetric off-diagonal entries, and the
    triangle inequality for every triple.

    Raises:
        NotAMetricError: If any property fails. The message names the witness pair or triple.
    """
    distances = np.asarray(metric.distances)
    size = len(metric.ground)
    slack = AXIOM_SLACK * (1.0 + float(np.abs(distances).max(initial=0.0)))
    labels = metric.ground

    asymmetric = np.argwhere(np.abs(distances - distances.T) > slack)
    if asymmetric.size:
        i, j = asymmetric[0]
        message = (
            f"The distance table is not a metric. d({labels[i]}, {labels[j]}) = {distances[i, j]} differs from "
            f"d({labels[j]}, {labels[i]}) = {distances[j, i]}."
        )
        console.error(message=message, error=NotAMetricError)
        raise NotAMetricError(message)  # pragma: no cover

    off_diagonal = ~np.eye(size, dtype=np.bool_)
    if np.any(np.abs(np.diag(distances)) > slack) or np.any(distances[off_diagonal] <= slack):
        message = (
            "The distance table is not a metric. Distances must be zero exactly on the diagonal and positive between "
            "distinct points."
        )
        console.error(message=message, error=NotAMetricError)
        raise NotAMetricError(message)  # pragma: no cover

    # excess[i, j, k] = d(i, k) - d(i, j) - d(j, k); a positive entry breaks the triangle inequality.
    excess = distances[:, np.newaxis, :] - distances[:, :, np.newaxis] - distances[np.newaxis, :, :]
    broken = np.argwhere(excess > slack)
    if broken.size:
        i, j, k = broken[0]
        message = (
            f"The distance table is not a metric. The triple ({labels[i]}, {labels[j]}, {labels[k]}) violates the "
            f"triangle inequality: d({labels[i]}, {labels[k]}) = {distances[i, k]} > "
            f"{distances[i, j] + distances[j, k]}."
        )
        console.error(message=message, error=NotAMetricError)
        raise NotAMetricError(message)  # pragma: no cover


def _derived_diversity(metric: MetricTable, *, use_sum: bool) -> DiversityTable:
    """Tabulates the diameter (use_sum=False) or the pairwise-sum (use_sum=True) diversity of the input metric."""
    check_metric(metric=metric)
    size = len(metric.ground)
    if size > MAXIMUM_DERIVED_GROUND:
        message = (
            f"Unable to tabulate the metric diversity. The ground set has {size} points, but at most "
            f"{MAXIMUM_DERIVED_GROUND} are supported."
        )
        console.error(message=message, error=ValueError)
        raise ValueError(message)  # pragma: no cover

    distances = np.asarray(metric.distances)
    values: dict[str, float] = {}
    for mask in range(1, 1 << size):
        members = [bit for bit in range(size) if mask >> bit & 1]
        block = distances[np.ix_(members, members)]
        # Each pair appears twice in the block.
        value = float(block.sum()) / 2.0 if use_sum else float(block.max())
        values[subset_key(metric.ground[bit] for bit in members)] = value
    return DiversityTable(ground=metric.ground, values=values)


def diameter_diversity(metric: MetricTable) -> DiversityTable:
    """Returns the diameter diversity of the input metric: the largest pairwise distance within each subset.

    Raises:
        NotAMetricError: If the input table is not a metric.
    """
    return _derived_diversity(metric=metric, use_sum=False)


def sum_diversity(metric: MetricTable) -> DiversityTable:
    """Returns the sum diversity of the input metric: the sum of all pairwise distances within each subset.

    Raises:
        NotAMetricError: If the input table is not a metric.
    """
    return _derived_diversity(metric=metric, use_sum=True)


def induced_metric(table: DiversityTable) -> MetricTable:
    """Restricts the input diversity to pairs, which yields the metric d(a, b) = δ({a, b}).

    Raises:
        IncompleteTableError: If the table does not store some pair value.
    """
    size = len(table.ground)
    distances = np.zeros((size, size))
    for i, j in combinations(range(size), 2):
        distances[i, j] = distances[j, i] = table.value((table.ground[i], table.ground[j]))
    return MetricTable(ground=table.ground, distances=distances)
