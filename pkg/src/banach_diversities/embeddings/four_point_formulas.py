"""Provides the published closed forms for the first face weight of the four-point contact system and for the upper
bound of the four-point radius, transcribed term by term.

These expressions are kept verbatim. The face system solver and the circumradius program serve as oracles:
compare_coefficient_a() measures the distance of the printed weight to every solved weight, and the conjecture harness
compares the printed bound with measured radii.

Neither printed expression agrees with its oracle on generic radii. Over random radii drawn log-uniformly
from [0.5, 2], the printed weight a matches neither the solved weight a nor its reciprocal. It also matches none of
the eight solved weights a, ..., h under any relabeling of the points. At equal radii it evaluates to 3 while the
solved weight is 1/3. The printed bound disagrees with the system radius 1 / scale, which equals the measured R₁₂₃₄
to solver round-off whenever the solved weights are valid, so the harness reports both violated and slack bounds on
such trials. Both expressions likely carry transcription errors that cannot be recovered from the printed text.
"""

from dataclasses import dataclass

import numpy as np
from ataraxis_base_utilities import console

from .four_point import FourPointRadii, solve_face_system
from ..exceptions import ZeroDenominatorError

ZERO_DENOMINATOR_THRESHOLD: float = 1e-12
"""The relative magnitude (scaled by the largest radius raised to the denominator degree) below which a denominator
counts as zero."""


def _shared_quintic(radii: FourPointRadii) -> float:
    """Evaluates the quintic that serves as the denominator of the face weight a and the numerator of the bound."""
    r12, r13, r14, r23, r24, r34 = radii.values()
    return (
        # First printed line.
        r13**2 * r14 * r24**2
        + r12**2 * r14 * r34**2
        # Second printed line.
        + (r12 * r13 * r14 - (r12 + r13) * r14**2) * r23**2
        - (r12 * r13**2 + r13 * r14**2 - (r12 * r13 + r13**2) * r14) * r23 * r24
        # Third printed line.
        - (2 * r12 * r13 * r14 * r24 - (r12**2 * r13 + r12 * r14**2 - (r12**2 + r12 * r13) * r14) * r23) * r34
    )


def _coefficient_a_numerator(radii: FourPointRadii) -> float:
    """Evaluates the printed numerator of the face weight a."""
    r12, r13, r14, r23, r24, r34 = radii.values()
    return (
        # First printed line.
        r12 * r14 * r24 * r34**2
        - (r12 * r13**2 + (r12 + r13) * r14**2 - (2 * r12 * r13 + r13**2) * r14) * r23 * r24
        # Second and third printed lines.
        + (r13**2 * r14 - r13 * r14**2) * r24**2
        - (
            r13 * r14 * r24**2
            - (r12**2 * r13 + r12 * r13**2 - r13 * r14**2 + r14**2 * r23 - (r12**2 + 3 * r12 * r13 + r13**2) * r14)
            * r24
        )
        * r34
    )


def _bound_denominator(radii: FourPointRadii) -> float:
    """Evaluates the printed quartic denominator of the four-point bound."""
    r12, r13, r14, r23, r24, r34 = radii.values()
    return (
        # First printed line.
        2 * r13 * r14 * r24**2
        # Second and third printed lines.
        + (r12 * r13 - (r12 + r13) * r14 - r14**2) * r23**2
        + (r12**2 * r13 - r12 * r13**2 - (r12 + r13) * r14**2 - (r12**2 - 2 * r12 * r13 - r13**2) * r14) * r23
        # Fourth and fifth printed lines.
        - (
            r12**2 * r13
            + r12 * r13**2
            - (r12 - r13) * r14**2
            - (r12**2 + r13**2) * r14
            + (r12 * r13 - (r12 + r13) * r14 + r14**2) * r23
        )
        * r24
        # Sixth and seventh printed lines.
        + (
            r12**2 * r13
            + r12 * r13**2
            + (r12 - r13) * r14**2
            - 2 * r12 * r14 * r24
            + (r12**2 - 2 * r12 * r13 - r13**2) * r14
            - (r12 * r13 - (r12 + r13) * r14 - r14**2) * r23
        )
        * r34
    )


def _vanishes(value: float, degree: int, radii: FourPointRadii) -> bool:
    """Determines whether the input denominator value vanishes relative to the radii scale."""
    return abs(value) <= ZERO_DENOMINATOR_THRESHOLD * max(radii.values()) ** degree


def _checked_denominator(value: float, degree: int, radii: FourPointRadii, name: str) -> float:
    """Returns the input denominator value or raises ZeroDenominatorError if it vanishes."""
    if _vanishes(value=value, degree=degree, radii=radii):
        message = (
            f"Unable to evaluate the {name}. Its denominator is {value}, which vanishes for the radii "
            f"{radii.to_dict()}."
        )
        console.error(message=message, error=ZeroDenominatorError)
        raise ZeroDenominatorError(message)  # pragma: no cover
    return value


def coefficient_a(radii: FourPointRadii) -> float:
    """Evaluates the printed closed form of the face weight a.

    Raises:
        ZeroDenominatorError: If the printed denominator vanishes.
    """
    denominator = _checked_denominator(_shared_quintic(radii), degree=5, radii=radii, name="printed face weight a")
    return _coefficient_a_numerator(radii) / denominator


def r1234_bound(radii: FourPointRadii) -> float:
    """Evaluates the printed closed-form upper bound of the four-point radius R₁₂₃₄. The bound is homogeneous of degree
    1 in the radii.

    Raises:
        ZeroDenominatorError: If the printed denominator vanishes (for example, when all radii are equal).
    """
    denominator = _checked_denominator(_bound_denominator(radii), degree=4, radii=radii, name="printed R1234 bound")
    return 2.0 * _shared_quintic(radii) / denominator


WEIGHT_NAMES: tuple[str, ...] = ("a", "b", "c", "d", "e", "f", "g", "h")
"""The names of the eight face weights in solution order."""


@dataclass(frozen=True)
class CoefficientComparison:
    """Stores the comparison of the printed face weight a with the face system solution."""

    printed: float | None
    """The printed closed-form value, or None if its denominator vanishes."""
    solved: float
    """The weight a solved from the face system."""
    relative_error: float | None
    """|printed - solved| / max(|solved|, tiny), or None if the printed value is undefined."""
    closest_weight: str | None
    """The name of the solved weight closest to the printed value in relative terms, or None if the printed value is
    undefined."""
    closest_relative_error: float | None
    """The relative error of the printed value against the closest solved weight, or None if the printed value is
    undefined."""


def _relative_error(value: float, reference: float) -> float:
    """Returns |value - reference| / max(|reference|, tiny)."""
    return abs(value - reference) / max(abs(reference), np.finfo(np.float64).tiny)


def compare_coefficient_a(radii: FourPointRadii) -> CoefficientComparison:
    """Compares the printed face weight a with the weights solved from the face contact system.

    Notes:
        Besides the error against the solved weight a, the comparison reports the closest of all eight solved
        weights, which detects a printed expression that belongs to another face or vertex order.

    Raises:
        SingularSystemError: If the face system is singular for the input radii.
    """
    system = solve_face_system(radii)
    printed, _ = printed_values(radii)
    if printed is None:
        return CoefficientComparison(
            printed=None, solved=system.a, relative_error=None, closest_weight=None, closest_relative_error=None
        )
    errors = [_relative_error(value=printed, reference=weight) for weight in system.coefficients]
    closest = int(np.argmin(errors))
    return CoefficientComparison(
        printed=printed,
        solved=system.a,
        relative_error=errors[0],
        closest_weight=WEIGHT_NAMES[closest],
        closest_relative_error=errors[closest],
    )


def printed_values(radii: FourPointRadii) -> tuple[float | None, float | None]:
    """Evaluates the printed face weight a and the printed R₁₂₃₄ bound, returning None for each value whose denominator
    vanishes instead of raising."""
    quintic = _shared_quintic(radii)
    weight = None if _vanishes(value=quintic, degree=5, radii=radii) else _coefficient_a_numerator(radii) / quintic
    denominator = _bound_denominator(radii)
    bound = None if _vanishes(value=denominator, degree=4, radii=radii) else 2.0 * quintic / denominator
    return weight, bound
