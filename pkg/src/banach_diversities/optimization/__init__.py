"""Provides the dense simplex linear programming engine shared by the gauge, containment, and certificate routines."""

from .simplex import (
    LpStatus,
    LpSolution,
    LinearProgram,
    solve,
)

__all__ = [
    "LinearProgram",
    "LpSolution",
    "LpStatus",
    "solve",
]
