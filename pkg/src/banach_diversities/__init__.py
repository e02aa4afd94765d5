"""Provides diversities over finite sets, the circumradius of point sets with respect to centrally symmetric
polytopes, and exact decision procedures and constructive witnesses for Banach embeddings of three-point diversities,
together with a numerical explorer for the conjectured four-point bound.

Use the 'bdiv' command-line interface to run the workflows from a terminal.
"""

from ataraxis_base_utilities import console

from .geometry import Polygon2, SymmetricPolytope, gauge, hull2d, minkowski_interpolate, random_symmetric_polytope
from .reporting import dumps, to_jsonable
from .embeddings import (
    SlabPair,
    Inequality,
    ProbeReport,
    TargetWitness,
    HexagonWitness,
    FourPointRadii,
    ConjectureTrial,
    ConjectureSummary,
    ConjectureVerdict,
    EmbeddingDecision,
    PlacementSolution,
    FaceSystemSolution,
    ThreePointDiversity,
    CoefficientComparison,
    r1234_bound,
    banach_range,
    canonicalize,
    coefficient_a,
    decide_banach,
    check_t_lambda,
    hexagon_witness,
    minkowski_range,
    conjecture_trial,
    higher_dim_probe,
    conjecture_sample,
    optimal_placement,
    pairwise_feasible,
    solve_face_system,
    pairwise_feasible4,
    witness_for_target,
    psd_identity_residual,
)
from .containment import CircumResult, OptimalityCertificate, certificate, circumradius, verify_certificate
from .diversities import (
    AxiomReport,
    MetricTable,
    DiversityTable,
    check_axioms,
    check_metric,
    sum_diversity,
    induced_metric,
    mixing_witness,
    induced_diversity,
    diameter_diversity,
    check_sublinear_samples,
)
from .optimization import LpStatus, LpSolution, LinearProgram, solve
from .configuration import RunConfig

# Ensures console is enabled when this library is imported.
if not console.enabled:
    console.enable()

__all__ = [
    "AxiomReport",
    "CircumResult",
    "CoefficientComparison",
    "ConjectureSummary",
    "ConjectureTrial",
    "ConjectureVerdict",
    "DiversityTable",
    "EmbeddingDecision",
    "FaceSystemSolution",
    "FourPointRadii",
    "HexagonWitness",
    "Inequality",
    "LinearProgram",
    "LpSolution",
    "LpStatus",
    "MetricTable",
    "OptimalityCertificate",
    "PlacementSolution",
    "Polygon2",
    "ProbeReport",
    "RunConfig",
    "SlabPair",
    "SymmetricPolytope",
    "TargetWitness",
    "ThreePointDiversity",
    "banach_range",
    "canonicalize",
    "certificate",
    "check_axioms",
    "check_metric",
    "check_sublinear_samples",
    "check_t_lambda",
    "circumradius",
    "coefficient_a",
    "conjecture_sample",
    "conjecture_trial",
    "decide_banach",
    "diameter_diversity",
    "dumps",
    "gauge",
    "hexagon_witness",
    "higher_dim_probe",
    "hull2d",
    "induced_diversity",
    "induced_metric",
    "minkowski_interpolate",
    "minkowski_range",
    "mixing_witness",
    "optimal_placement",
    "pairwise_feasible",
    "pairwise_feasible4",
    "psd_identity_residual",
    "r1234_bound",
    "random_symmetric_polytope",
    "solve",
    "solve_face_system",
    "sum_diversity",
    "to_jsonable",
    "verify_certificate",
    "witness_for_target",
]
