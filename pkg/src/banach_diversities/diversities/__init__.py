"""Provides finite diversity tables, axiom verification, metric-derived diversities, and diversities induced by
symmetric polytopes through the circumradius."""

from .diversity_table import (
    DEFAULT_SAMPLE_TRIALS,
    AxiomId,
    AxiomReport,
    AxiomViolation,
    DiversityTable,
    subset_key,
    check_axioms,
)
from .metric_diversities import MetricTable, check_metric, sum_diversity, induced_metric, diameter_diversity
from .minkowski_diversities import (
    SublinearReport,
    SublinearProperty,
    SublinearViolation,
    mixing_witness,
    induced_diversity,
    check_sublinear_samples,
)

__all__ = [
    "DEFAULT_SAMPLE_TRIALS",
    "AxiomId",
    "AxiomReport",
    "AxiomViolation",
    "DiversityTable",
    "MetricTable",
    "SublinearProperty",
    "SublinearReport",
    "SublinearViolation",
    "check_axioms",
    "check_metric",
    "check_sublinear_samples",
    "diameter_diversity",
    "induced_diversity",
    "induced_metric",
    "mixing_witness",
    "subset_key",
    "sum_diversity",
]
