"""Provides the RunConfig class that stores the tolerances, the seed, and the output settings shared by all command-line
workflows, and the helpers that save and load it as a .YAML file."""

from pathlib import Path
from dataclasses import dataclass

from ataraxis_base_utilities import LogLevel, console, ensure_directory_exists
from ataraxis_data_structures import YamlConfig

DEFAULT_DECISION_SLACK: float = 1e-9
"""The default relative slack of the embedding decision procedures."""

DEFAULT_LP_TOLERANCE: float = 1e-6
"""The default absolute tolerance with which linear programming measurements are compared against target values."""

DEFAULT_SEED: int = 1
"""The default seed of the randomized harnesses."""


@dataclass
class RunConfig(YamlConfig):
    """Stores the runtime parameters of a command-line workflow.

    Notes:
        The output path is stored as a string to keep the .YAML file portable. Use the resolved_output_path property to
        access it as a Path.
    """

    decision_slack: float = DEFAULT_DECISION_SLACK
    """The relative slack of the embedding decision procedures. Must be positive."""
    lp_tolerance: float = DEFAULT_LP_TOLERANCE
    """The absolute tolerance of the round-trip comparisons between measured and target values. Must be positive."""
    seed: int = DEFAULT_SEED
    """The root seed of the randomized harnesses."""
    output_path: str | None = None
    """The optional path of the file to which the workflow writes its artifact (witness body or trial dump)."""
    json_output: bool = True
    """Determines whether the command-line interface prints machine-readable JSON documents instead of console
    summaries."""
    workers: int | None = None
    """The number of worker processes used by the conjecture sampler. If None, uses all available CPU cores."""

    def __post_init__(self) -> None:
        """Verifies that the tolerances are positive and the worker count is valid."""
        for name in ("decision_slack", "lp_tolerance"):
            value = getattr(self, name)
            if not value > 0.0:
                message = f"Unable to configure the run. The '{name}' tolerance must be positive, but got {value}."
                console.error(message=message, error=ValueError)
                raise ValueError(message)  # pragma: no cover
        if self.workers is not None and self.workers < 1:
            message = f"Unable to configure the run. The worker count must be at least 1, but got {self.workers}."
            console.error(message=message, error=ValueError)
            raise ValueError(message)  # pragma: no cover

    @property
    def resolved_output_path(self) -> Path | None:
        """Returns the output path as a Path, or None if it is not set."""
        return None if self.output_path is None else Path(self.output_path)


def save_run_configuration(configuration: RunConfig, path: Path) -> None:
    """Saves the input configuration to the specified .YAML file, creating missing parent directories.

    Raises:
        ValueError: If the path does not point to a .yaml file.
    """
    if path.suffix.lower() not in {".yaml", ".yml"}:
        message = (
            f"Unable to save the run configuration. The path ({path}) must point to a .yaml file, but it has the "
            f"'{path.suffix}' extension."
        )
        console.error(message=message, error=ValueError)
        raise ValueError(message)  # pragma: no cover

    ensure_directory_exists(path)
    configuration.to_yaml(file_path=path)
    console.echo(message=f"Run configuration: Saved to {path}.", level=LogLevel.SUCCESS)


def load_run_configuration(path: Path) -> RunConfig:
    """Loads the run configuration stored in the specified .YAML file.

    Raises:
        FileNotFoundError: If the file does not exist.
    """
    if not path.exists():
        message = f"Unable to load the run configuration. The file ({path}) does not exist."
        console.error(message=message, error=FileNotFoundError)
        raise FileNotFoundError(message)  # pragma: no cover

    configuration: RunConfig = RunConfig.from_yaml(file_path=path)
    return configuration
