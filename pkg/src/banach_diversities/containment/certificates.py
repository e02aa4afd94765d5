"""Provides the extraction and verification of optimal-containment certificates.

A translate t + X sits optimally in R·C exactly when some touching points p_i of t + X on the boundary of R·C admit
outer normals u_i whose convex hull contains the origin. The certificate records those touching points, unit outer
normals, and the convex weights that combine the normals to zero. By Carathéodory's theorem, at most n + 1 touching
points are needed in dimension n.
"""

from typing import NoReturn
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from ataraxis_base_utilities import console

from .circumradius import CircumResult, as_point_set
from ..geometry import SymmetricPolytope, gauge
from ..exceptions import CertificateNotFoundError
from ..optimization import LinearProgram, solve

CERTIFICATE_TOLERANCE: float = 1e-7
"""The absolute tolerance (scaled by max(1, radius)) of every certificate residual check."""


@dataclass(frozen=True, eq=False)
class OptimalityCertificate:
    """Stores a certificate that a translated point set sits optimally inside a scaled symmetric polytope."""

    indices: tuple[int, ...]
    """The indices of the touching points in the input point set."""
    touching_points: NDArray[np.float64]
    """The (m, n) array of touching points center + X[index], with m ≤ n + 1."""
    normals: NDArray[np.float64]
    """The (m, n) array of unit outer normals, one per touching point."""
    weights: NDArray[np.float64]
    """The convex weights that combine the normals to the zero vector."""
    center: NDArray[np.float64]
    """The translation t of the certified placement."""


def _fail(reason: str) -> NoReturn:
    """Raises CertificateNotFoundError with the standard message prefix."""
    message = f"Unable to extract the optimal-containment certificate. {reason}"
    console.error(message=message, error=CertificateNotFoundError)
    raise CertificateNotFoundError(message)  # pragma: no cover


def certificate(points: NDArray[np.float64], body: SymmetricPolytope, result: CircumResult) -> OptimalityCertificate:
    """Extracts the optimal-containment certificate for the input circumradius result.

    Notes:
        The contacts are first projected radially onto the boundary of radius·C. A single joint program then searches
        for outer normals u_i at all projected contacts at once: u_i·(radius·v - p_i) ≤ 0 for every signed generator v,
        Σ u_i = 0, and the normalization Σ u_i·p_i = 1. The nonzero normals are rescaled to unit length, their lengths
        become the initial convex weights, and a final feasibility program picks a basic solution with at most n + 1
        positive weights.

    Args:
        points: The point set passed to circumradius().
        body: The body passed to circumradius().
        result: The circumradius result computed for the point set and the body.

    Returns:
        The verified certificate.

    Raises:
        CertificateNotFoundError: If the radius is zero, if a certificate program fails, or if the extracted
            certificate does not pass verify_certificate().
    """
    points = as_point_set(points=points, body=body)
    radius = result.radius
    if radius <= 0.0:
        _fail(reason="The point set has zero circumradius, so no boundary contact exists.")

    dimension = body.dim
    indices = [contact.index for contact in result.contacts]
    translated = result.center + points[indices]
    gauges = np.array([max(contact.gauge, np.finfo(np.float64).tiny) for contact in result.contacts])
    projected = translated * (radius / gauges)[:, np.newaxis]

    # Joint normal program over the stacked free variables (u_1, ..., u_m).
    vertices = body.vertices()
    count = len(indices)
    variable_count = count * dimension
    inequality_rows = []
    for position in range(count):
        block = np.zeros((vertices.shape[0], variable_count))
        block[:, position * dimension : (position + 1) * dimension] = radius * vertices - projected[position]
        inequality_rows.append(block)
    equality_matrix = np.vstack((np.tile(np.eye(dimension), (1, count)), projected.reshape(1, -1)))
    equality_rhs = np.concatenate((np.zeros(dimension), [1.0]))

    normal_program = LinearProgram(
        objective=np.zeros(variable_count),
        equality_matrix=equality_matrix,
        equality_rhs=equality_rhs,
        inequality_matrix=np.vstack(inequality_rows),
        inequality_rhs=np.zeros(count * vertices.shape[0]),
        nonnegative=np.zeros(variable_count, dtype=np.bool_),
    )
    normal_solution = solve(normal_program)
    if not normal_solution.optimal:
        _fail(reason=f"The outer normal program terminated as '{normal_solution.status}'.")

    normals = normal_solution.primal.reshape(count, dimension)
    lengths = np.linalg.norm(normals, axis=1)
    active = np.flatnonzero(lengths > CERTIFICATE_TOLERANCE * lengths.max(initial=0.0))
    if active.size == 0:
        _fail(reason="The outer normal program returned only zero normals.")
    unit_normals = normals[active] / lengths[active, np.newaxis]

    # Support reduction: a basic solution of {Σ α_i u_i = 0, Σ α_i = 1, α ≥ 0} has at most n + 1 positive entries.
    weight_program = LinearProgram(
        objective=np.zeros(active.size),
        equality_matrix=np.vstack((unit_normals.T, np.ones((1, active.size)))),
        equality_rhs=np.concatenate((np.zeros(dimension), [1.0])),
    )
    weight_solution = solve(weight_program)
    if not weight_solution.optimal:
        _fail(reason=f"The convex weight program terminated as '{weight_solution.status}'.")

    weights = np.maximum(weight_solution.primal, 0.0)
    support = np.flatnonzero(weights > 0.0)
    weights = weights[support] / weights[support].sum()
    chosen = active[support]

    extracted = OptimalityCertificate(
        indices=tuple(indices[position] for position in chosen),
        touching_points=translated[chosen],
        normals=unit_normals[support],
        weights=weights,
        center=result.center.copy(),
    )
    if not verify_certificate(certificate=extracted, points=points, body=body, radius=radius):
        _fail(reason="The extracted certificate does not pass verification within tolerance.")
    return extracted


def verify_certificate(
    certificate: OptimalityCertificate,
    points: NDArray[np.float64],
    body: SymmetricPolytope,
    radius: float,
    *,
    tolerance: float = CERTIFICATE_TOLERANCE,
) -> bool:
    """Verifies that the input certificate proves the optimality of its placement at the given radius.

    The check confirms that the weights are nonnegative and sum to 1, that the weighted normals sum to zero, that every
    normal is an outer normal of radius·C at its touching point, that every touching point lies on the boundary of
    radius·C, and that the touching points are the translates of the referenced input points.

    Args:
        certificate: The certificate to verify.
        points: The certified point set.
        body: The certified body.
        radius: The certified radius.
        tolerance: The absolute tolerance of each check, scaled by max(1, radius).

    Returns:
        True if every check passes, False otherwise.
    """
    slack = tolerance * max(1.0, radius)
    weights = np.asarray(certificate.weights, dtype=np.float64)
    normals = np.atleast_2d(np.asarray(certificate.normals, dtype=np.float64))
    touching = np.atleast_2d(np.asarray(certificate.touching_points, dtype=np.float64))
    points = np.atleast_2d(np.asarray(points, dtype=np.float64))

    count = weights.size
    if count == 0 or normals.shape != (count, body.dim) or touching.shape != (count, body.dim):
        return False
    if len(certificate.indices) != count or count > body.dim + 1:
        return False
    if any(index < 0 or index >= points.shape[0] for index in certificate.indices):
        return False

    if np.any(weights < -tolerance) or abs(float(weights.sum()) - 1.0) > tolerance:
        return False
    if np.linalg.norm(weights @ normals) > tolerance:
        return False

    expected = certificate.center + points[list(certificate.indices)]
    if np.abs(expected - touching).max() > slack:
        return False

    vertices = radius * body.vertices()
    for normal, point in zip(normals, touching, strict=True):
        if np.max((vertices - point) @ normal) > slack:
            return False
        if abs(gauge(body=body, point=point) - radius) > slack:
            return False
    return True
