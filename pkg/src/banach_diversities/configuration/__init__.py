"""Provides the run configuration shared by the command-line workflows."""

from .run_configuration import (
    DEFAULT_SEED,
    DEFAULT_LP_TOLERANCE,
    DEFAULT_DECISION_SLACK,
    RunConfig,
    load_run_configuration,
    save_run_configuration,
)

__all__ = [
    "DEFAULT_DECISION_SLACK",
    "DEFAULT_LP_TOLERANCE",
    "DEFAULT_SEED",
    "RunConfig",
    "load_run_configuration",
    "save_run_configuration",
]
