"""Provides the circumradius of point sets with respect to symmetric polytopes and the optimal-containment
certificates that prove a circumradius is attained.
"""

from .certificates import (
    CERTIFICATE_TOLERANCE,
    OptimalityCertificate,
    certificate,
    verify_certificate,
)
from .circumradius import (
    CONTACT_THRESHOLD,
    Contact,
    CircumResult,
    as_point_set,
    circumradius,
    pair_circumradius,
)

__all__ = [
    "CERTIFICATE_TOLERANCE",
    "CONTACT_THRESHOLD",
    "CircumResult",
    "Contact",
    "OptimalityCertificate",
    "as_point_set",
    "certificate",
    "circumradius",
    "pair_circumradius",
    "verify_certificate",
]
