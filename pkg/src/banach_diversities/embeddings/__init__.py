"""Provides the three-point embedding decisions and witness constructions, the higher-dimensional probe, and the
four-point contact system with its conjecture-testing harness."""

from .witnesses import (
    SlabPair,
    TargetWitness,
    HexagonWitness,
    parallelogram,
    hexagon_witness,
    measure_triangle,
    witness_points,
    witness_for_target,
)
from .conjecture import (
    ConjectureTrial,
    ConjectureSummary,
    ConjectureVerdict,
    sample_radii,
    conjecture_trial,
    conjecture_sample,
)
from .four_point import (
    FourPointRadii,
    FaceSystemSolution,
    face_system,
    triple_bounds,
    simplex_points,
    solve_face_system,
    pairwise_feasible4,
    generators_from_radii,
)
from .three_point import (
    SQRT3,
    Inequality,
    PlacementSolution,
    EmbeddingDecision,
    ThreePointDiversity,
    banach_range,
    canonicalize,
    decide_banach,
    check_t_lambda,
    boundary_points,
    minkowski_range,
    placed_triangle,
    quadratic_form,
    pairwise_feasible,
    optimal_placement,
    banach_upper_bound,
    psd_identity_terms,
    reference_triangle,
    psd_identity_residual,
    printed_banach_upper_bound,
)
from .higher_dimension import (
    ProbeReport,
    ProbeViolation,
    probe_triangle,
    random_triangle,
    higher_dim_probe,
    planar_section_body,
)
from .four_point_formulas import (
    CoefficientComparison,
    r1234_bound,
    coefficient_a,
    printed_values,
    compare_coefficient_a,
)

__all__ = [
    "SQRT3",
    "CoefficientComparison",
    "ConjectureSummary",
    "ConjectureTrial",
    "ConjectureVerdict",
    "EmbeddingDecision",
    "FaceSystemSolution",
    "FourPointRadii",
    "HexagonWitness",
    "Inequality",
    "PlacementSolution",
    "ProbeReport",
    "ProbeViolation",
    "SlabPair",
    "TargetWitness",
    "ThreePointDiversity",
    "banach_range",
    "banach_upper_bound",
    "boundary_points",
    "canonicalize",
    "check_t_lambda",
    "coefficient_a",
    "compare_coefficient_a",
    "conjecture_sample",
    "conjecture_trial",
    "decide_banach",
    "face_system",
    "generators_from_radii",
    "hexagon_witness",
    "higher_dim_probe",
    "measure_triangle",
    "minkowski_range",
    "optimal_placement",
    "pairwise_feasible",
    "pairwise_feasible4",
    "parallelogram",
    "placed_triangle",
    "planar_section_body",
    "printed_banach_upper_bound",
    "printed_values",
    "probe_triangle",
    "psd_identity_residual",
    "psd_identity_terms",
    "quadratic_form",
    "r1234_bound",
    "random_triangle",
    "reference_triangle",
    "sample_radii",
    "simplex_points",
    "solve_face_system",
    "triple_bounds",
    "witness_for_target",
    "witness_points",
]
