"""Provides the 'bdiv' Command-Line Interface (CLI) that exposes the circumradius engine, the diversity checks, and the
three- and four-point embedding workflows.

Every command prints a single JSON document to standard output (unless --no-json is used), exits with code 0 on
success, 2 on a negative decision, and 1 on an error. Error documents have the form {"error": ..., "type": ...}.
"""

import json
from typing import Any, NoReturn
from pathlib import Path
from dataclasses import dataclass, field

import click
import numpy as np
from numpy.typing import NDArray
from ataraxis_base_utilities import LogLevel, console, ensure_directory_exists

from ..geometry import SymmetricPolytope
from ..reporting import dumps
from ..embeddings import (
    FourPointRadii,
    ThreePointDiversity,
    banach_range,
    decide_banach,
    triple_bounds,
    witness_points,
    conjecture_trial,
    higher_dim_probe,
    measure_triangle,
    conjecture_sample,
    solve_face_system,
    pairwise_feasible,
    pairwise_feasible4,
    witness_for_target,
    compare_coefficient_a,
)
from ..exceptions import SingularSystemError, PreconditionViolatedError
from ..containment import certificate, circumradius
from ..diversities import DEFAULT_SAMPLE_TRIALS, DiversityTable, check_axioms
from ..configuration import RunConfig, load_run_configuration, save_run_configuration

CONTEXT_SETTINGS = {"max_content_width": 120}
"""Ensures that displayed CLICK help messages are formatted according to the project standard."""

NEGATIVE_EXIT_CODE: int = 2
"""The exit code of commands whose decision or verification is negative."""

ERROR_EXIT_CODE: int = 1
"""The exit code of commands that fail with an error, including usage errors."""

_HANDLED_ERRORS: tuple[type[Exception], ...] = (ValueError, RuntimeError, OSError, KeyError, TypeError)
"""The error families reported as {"error": ...} documents instead of tracebacks."""


@dataclass
class _Session:
    """Stores the state shared by all commands of a single invocation."""

    config: RunConfig = field(default_factory=RunConfig)
    """The resolved run configuration."""


@dataclass(frozen=True)
class RoundTripEntry:
    """Stores the comparison of a single target value with its re-measured counterpart."""

    name: str
    """The name of the compared value (d12, d13, d23, or d123)."""
    target: float
    """The requested value."""
    measured: float
    """The value re-measured with the circumradius program."""
    error: float
    """The absolute difference between the measured and the target values."""


@dataclass(frozen=True)
class RoundTripReport:
    """Stores the outcome of re-measuring a witness body against its target values."""

    entries: tuple[RoundTripEntry, ...]
    """The per-value comparisons in (d12, d13, d23, d123) order."""
    tolerance: float
    """The largest accepted absolute error."""
    passed: bool
    """Determines whether every absolute error is within the tolerance."""


def _read_json(path: Path) -> dict[str, Any]:
    """Reads and parses the JSON document stored at the input path."""
    data = json.loads(path.read_text(encoding="utf-8"))
    if not isinstance(data, dict):
        message = f"Unable to load the JSON document ({path}). Expected an object, but got {type(data).__name__}."
        console.error(message=message, error=ValueError)
        raise ValueError(message)  # pragma: no cover
    return data


def load_point_set(path: Path) -> tuple[NDArray[np.float64], tuple[str, ...]]:
    """Loads a {"dim": n, "points": [[...], ...], "labels": [...]} point set document.

    Returns:
        The (k, n) array of points and their labels (p1, ..., pk when the document has no labels).

    Raises:
        ValueError: If the declared dimension or the label count does not match the points.
    """
    data = _read_json(path)
    points = np.atleast_2d(np.asarray(data["points"], dtype=np.float64))
    declared = int(data.get("dim", points.shape[1]))
    labels = tuple(str(label) for label in data.get("labels", [f"p{index + 1}" for index in range(points.shape[0])]))
    if points.shape[1] != declared or len(labels) != points.shape[0]:
        message = (
            f"Unable to load the point set ({path}). The document declares dimension {declared} and "
            f"{len(labels)} labels, but the points array has shape {points.shape}."
        )
        console.error(message=message, error=ValueError)
        raise ValueError(message)  # pragma: no cover
    return points, labels


def roundtrip_verify(
    witness_path: Path, targets: tuple[float, float, float, float], *, tolerance: float = 1e-6
) -> RoundTripReport:
    """Re-measures the pair and triple values induced by a saved witness and compares them with the targets.

    Notes:
        Witness documents written by 'bdiv embed3 witness' store the placed points next to the body. For bare body
        documents, the reference triangle of the canonicalized targets is used.

    Args:
        witness_path: The path to the witness document.
        targets: The target values (d12, d13, d23, d123) in the original label order.
        tolerance: The largest accepted absolute error.

    Returns:
        The round-trip report.
    """
    data = _read_json(witness_path)
    body = SymmetricPolytope.from_dict(data)
    if "points" in data:
        points = np.asarray(data["points"], dtype=np.float64)
    else:
        points = witness_points(ThreePointDiversity.from_values(*targets))

    measured = measure_triangle(points=points, body=body)
    entries = tuple(
        RoundTripEntry(name=name, target=target, measured=value, error=abs(value - target))
        for name, target, value in zip(("d12", "d13", "d23", "d123"), targets, measured, strict=True)
    )
    return RoundTripReport(
        entries=entries, tolerance=tolerance, passed=all(entry.error <= tolerance for entry in entries)
    )


def _config(context: click.Context) -> RunConfig:
    """Returns the resolved run configuration of the invocation."""
    session: _Session = context.find_object(_Session)  # type: ignore[assignment]
    return session.config


def _emit(context: click.Context, document: dict[str, Any], summary: str, *, negative: bool = False) -> None:
    """Prints the output document (or the console summary) and exits with 2 if the outcome is negative."""
    config = _config(context)
    if config.json_output:
        click.echo(dumps({**document, "config": config}))
    else:
        console.echo(message=summary, level=LogLevel.WARNING if negative else LogLevel.SUCCESS)
    if negative:
        context.exit(NEGATIVE_EXIT_CODE)


def _fail(context: click.Context, error: Exception) -> NoReturn:
    """Prints the error document and exits with code 1."""
    config = _config(context)
    document = dumps({"error": str(error), "type": type(error).__name__, "config": config})
    click.echo(document, err=not config.json_output)
    context.exit(ERROR_EXIT_CODE)


class _DispatchGroup(click.Group):
    """Reports library errors raised by subcommands as machine-readable error documents."""

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except (click.exceptions.Exit, click.exceptions.Abort):
            raise
        except click.UsageError as error:
            error.exit_code = ERROR_EXIT_CODE
            raise
        except _HANDLED_ERRORS as error:
            _fail(context=ctx, error=error)


@click.group("bdiv", cls=_DispatchGroup, context_settings=CONTEXT_SETTINGS)
@click.option(
    "-c",
    "--config",
    "config_path",
    type=click.Path(exists=True, file_okay=True, dir_okay=False, path_type=Path),
    default=None,
    help="The path to a saved run configuration .yaml file. Other options override its values.",
)
@click.option("--tolerance", type=float, default=None, help="The round-trip comparison tolerance (default 1e-6).")
@click.option("--decision-slack", type=float, default=None, help="The relative decision slack (default 1e-9).")
@click.option("--seed", type=int, default=None, help="The root seed of the randomized harnesses (default 1).")
@click.option(
    "--out",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="The path of the artifact written by the 'embed3 witness' and 'embed4 sample' commands.",
)
@click.option("--json/--no-json", "json_output", default=None, help="Print JSON documents (default) or summaries.")
@click.pass_context
def cli(
    ctx: click.Context,
    config_path: Path | None,
    tolerance: float | None,
    decision_slack: float | None,
    seed: int | None,
    out: Path | None,
    json_output: bool | None,
) -> None:
    """Computes circumradii and decides and constructs Banach embeddings of three- and four-point diversities."""
    session = ctx.ensure_object(_Session)
    config = RunConfig() if config_path is None else load_run_configuration(path=config_path)
    overrides = {
        "lp_tolerance": tolerance,
        "decision_slack": decision_slack,
        "seed": seed,
        "output_path": None if out is None else str(out),
        "json_output": json_output,
    }
    values = {**vars(config), **{name: value for name, value in overrides.items() if value is not None}}
    session.config = RunConfig(**values)

    # Keeps standard output a single JSON document.
    if session.config.json_output and console.enabled:
        console.disable()
        ctx.call_on_close(console.enable)


@cli.command("circumradius")
@click.option(
    "-p",
    "--points",
    "points_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    required=True,
    help="The path to the point set JSON document.",
)
@click.option(
    "-b",
    "--body",
    "body_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    required=True,
    help="The path to the symmetric polytope JSON document.",
)
@click.option("--certificate", "with_certificate", is_flag=True, help="Also extract the optimality certificate.")
@click.pass_context
def circumradius_command(ctx: click.Context, points_path: Path, body_path: Path, with_certificate: bool) -> None:
    """Computes the circumradius of a point set with respect to a symmetric polytope."""
    points, labels = load_point_set(path=points_path)
    body = SymmetricPolytope.from_dict(_read_json(body_path))
    result = circumradius(points=points, body=body)
    proof = certificate(points=points, body=body, result=result) if with_certificate and result.radius > 0.0 else None
    document = {
        "radius": result.radius,
        "center": result.center,
        "contacts": [
            {"index": contact.index, "label": labels[contact.index], "gauge": contact.gauge}
            for contact in result.contacts
        ],
        "certificate": proof,
    }
    _emit(context=ctx, document=document, summary=f"Circumradius: {result.radius}.")


@cli.command("check-diversity")
@click.argument("table_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option(
    "--trials",
    type=int,
    default=DEFAULT_SAMPLE_TRIALS,
    show_default=True,
    help="The number of random (A, B, C) triples checked for ground sets larger than 6 elements.",
)
@click.pass_context
def check_diversity_command(ctx: click.Context, table_path: Path, trials: int) -> None:
    """Verifies the diversity axioms of a diversity table stored as JSON."""
    table = DiversityTable.from_dict(_read_json(table_path))
    report = check_axioms(table=table, trials=trials, seed=_config(ctx).seed)
    _emit(
        context=ctx,
        document={"report": report, "ok": report.ok},
        summary=f"Diversity check: {report.violation_count} violations.",
        negative=not report.ok,
    )


@cli.group("embed3")
def embed3() -> None:
    """Decides, constructs, and verifies Banach embeddings of three-point diversities."""


def _three_point_options(function: Any) -> Any:
    """Attaches the --d12, --d13, and --d23 options to the decorated command."""
    for name in ("d23", "d13", "d12"):
        function = click.option(f"--{name}", type=float, required=True, help=f"The value of the pair {name[1:]}.")(
            function
        )
    return function


@embed3.command("decide")
@_three_point_options
@click.option("--d123", type=float, required=True, help="The value of the whole three-point set.")
@click.pass_context
def decide_command(ctx: click.Context, d12: float, d13: float, d23: float, d123: float) -> None:
    """Decides whether the three-point values are induced by some origin-symmetric convex body."""
    diversity = ThreePointDiversity.from_values(d12=d12, d13=d13, d23=d23, d123=d123)
    decision = decide_banach(diversity, slack=_config(ctx).decision_slack)
    _emit(
        context=ctx,
        document={"decision": decision, "minkowski": decision.minkowski, "banach": decision.banach},
        summary=(
            f"Three-point decision: minkowski={decision.minkowski}, banach={decision.banach}, Banach interval "
            f"{decision.banach_interval}."
        ),
        negative=not decision.banach,
    )


@embed3.command("witness")
@_three_point_options
@click.option(
    "--target",
    type=float,
    default=None,
    help="The requested value of the whole set. Defaults to the upper end of the Banach interval.",
)
@click.option(
    "--out",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="The path of the witness JSON document. Overrides the global --out option.",
)
@click.pass_context
def witness_command(
    ctx: click.Context, d12: float, d13: float, d23: float, target: float | None, out: Path | None
) -> None:
    """Builds a planar symmetric body that induces the requested three-point values on three placed points."""
    config = _config(ctx)
    diversity = ThreePointDiversity.from_values(d12=d12, d13=d13, d23=d23, d123=max(d12, d13, d23))
    if not pairwise_feasible(diversity, slack=config.decision_slack):
        message = (
            f"Unable to build the witness body. The pair values ({d12}, {d13}, {d23}) violate the triangle "
            f"inequalities."
        )
        console.error(message=message, error=PreconditionViolatedError)
        raise PreconditionViolatedError(message)  # pragma: no cover

    value = banach_range(diversity)[1] if target is None else target
    decision = decide_banach(diversity.with_triple(value), slack=config.decision_slack)
    if not decision.banach:
        _emit(
            context=ctx,
            document={"decision": decision, "banach": False},
            summary=f"The target {value} lies outside the Banach interval {decision.banach_interval}.",
            negative=True,
        )

    witness = witness_for_target(diversity, value)
    points = witness_points(diversity)
    path = out if out is not None else config.resolved_output_path
    if path is not None:
        ensure_directory_exists(path)
        path.write_text(
            dumps({**witness.body.to_dict(), "points": points, "labels": list(diversity.labels)}), encoding="utf-8"
        )
    _emit(
        context=ctx,
        document={
            "witness": witness,
            "points": points,
            "labels": list(diversity.labels),
            "target": value,
            "path": path,
        },
        summary=f"Three-point witness: measured value {witness.measured} for the target {value}.",
    )


@embed3.command("verify")
@click.argument("witness_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@_three_point_options
@click.option("--d123", type=float, required=True, help="The target value of the whole three-point set.")
@click.pass_context
def verify_command(ctx: click.Context, witness_path: Path, d12: float, d13: float, d23: float, d123: float) -> None:
    """Re-measures the values induced by a saved witness body and compares them with the targets."""
    report = roundtrip_verify(
        witness_path=witness_path, targets=(d12, d13, d23, d123), tolerance=_config(ctx).lp_tolerance
    )
    _emit(
        context=ctx,
        document={"report": report, "passed": report.passed},
        summary=f"Witness round trip: largest error {max(entry.error for entry in report.entries)}.",
        negative=not report.passed,
    )


@cli.group("embed4")
def embed4() -> None:
    """Explores the conjectured upper bound of four-point Banach diversities."""


@embed4.command("bound")
@click.option("--r12", type=float, required=True, help="The value of the pair {1, 2}.")
@click.option("--r13", type=float, required=True, help="The value of the pair {1, 3}.")
@click.option("--r14", type=float, required=True, help="The value of the pair {1, 4}.")
@click.option("--r23", type=float, required=True, help="The value of the pair {2, 3}.")
@click.option("--r24", type=float, required=True, help="The value of the pair {2, 4}.")
@click.option("--r34", type=float, required=True, help="The value of the pair {3, 4}.")
@click.pass_context
def bound_command(
    ctx: click.Context, r12: float, r13: float, r14: float, r23: float, r24: float, r34: float
) -> None:
    """Evaluates the four-point bound, solves the face contact system, and measures the simplex circumradius."""
    radii = FourPointRadii(r12=r12, r13=r13, r14=r14, r23=r23, r24=r24, r34=r34)
    if not pairwise_feasible4(radii, slack=_config(ctx).decision_slack):
        message = (
            f"Unable to evaluate the four-point bound. The radii {radii.to_dict()} violate the pairwise triangle "
            f"inequalities."
        )
        console.error(message=message, error=PreconditionViolatedError)
        raise PreconditionViolatedError(message)  # pragma: no cover

    trial = conjecture_trial(radii)
    try:
        system = solve_face_system(radii)
        comparison = compare_coefficient_a(radii)
    except SingularSystemError:
        system, comparison = None, None
    _emit(
        context=ctx,
        document={
            "bound": trial.upper,
            "system": system,
            "coefficients_valid": trial.coefficients_valid,
            "coefficient_a": comparison,
            "triple_bounds": triple_bounds(radii),
            "trial": trial,
        },
        summary=(
            f"Four-point bound: printed bound {trial.upper}, measured radius {trial.measured_r1234}, verdict "
            f"'{trial.verdict}'."
        ),
    )


@embed4.command("sample")
@click.option("--count", type=int, default=1000, show_default=True, help="The number of conjecture trials.")
@click.option("--seed", type=int, default=None, help="The root seed. Overrides the global --seed option.")
@click.option(
    "--out",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="The path of the JSON-lines trial dump. Overrides the global --out option.",
)
@click.option("--workers", type=int, default=None, help="The number of worker processes. Defaults to all CPU cores.")
@click.option("--progress", is_flag=True, help="Display a progress bar on standard error.")
@click.pass_context
def sample_command(
    ctx: click.Context, count: int, seed: int | None, out: Path | None, workers: int | None, progress: bool
) -> None:
    """Runs the randomized conjecture harness and reports verdict counts."""
    config = _config(ctx)
    summary = conjecture_sample(
        count=count,
        seed=config.seed if seed is None else seed,
        workers=config.workers if workers is None else workers,
        progress=progress,
        output_path=out if out is not None else config.resolved_output_path,
    )
    _emit(
        context=ctx,
        document={"summary": summary},
        summary=f"Conjecture sampling: {dumps(summary.verdicts, indent=None)}.",
    )


@cli.command("probe-dim3")
@click.option("--trials", type=int, default=1000, show_default=True, help="The number of sampled bodies and triangles.")
@click.option("--seed", type=int, default=None, help="The seed. Overrides the global --seed option.")
@click.option("--progress", is_flag=True, help="Display a progress bar on standard error.")
@click.pass_context
def probe_command(ctx: click.Context, trials: int, seed: int | None, progress: bool) -> None:
    """Verifies that three-dimensional bodies induce only planar-realizable three-point values."""
    report = higher_dim_probe(trials=trials, seed=_config(ctx).seed if seed is None else seed, progress=progress)
    _emit(
        context=ctx,
        document={"report": report, "ok": report.ok},
        summary=f"Dimension-3 probe: {len(report.violations)} counterexamples in {trials} trials.",
        negative=not report.ok,
    )


@cli.command("config")
@click.option(
    "-o",
    "--out",
    "path",
    type=click.Path(dir_okay=False, path_type=Path),
    required=True,
    help="The path of the .yaml file to which to write the resolved run configuration.",
)
@click.pass_context
def config_command(ctx: click.Context, path: Path) -> None:
    """Writes the resolved run configuration (defaults plus overrides) to a .yaml file."""
    save_run_configuration(configuration=_config(ctx), path=path)
    _emit(context=ctx, document={"path": path}, summary=f"Run configuration: Saved to {path}.")


def main(argv: list[str] | None = None) -> int:
    """Runs the 'bdiv' CLI and returns its exit code.

    Args:
        argv: The command-line arguments. If None, uses the arguments of the current process.

    Returns:
        0 on success, 2 on a negative decision, and 1 on an error.
    """
    try:
        result = cli.main(args=argv, prog_name="bdiv", standalone_mode=False, obj=_Session())
    except click.ClickException as error:
        error.show()
        return ERROR_EXIT_CODE
    except click.exceptions.Abort:
        return ERROR_EXIT_CODE
    return result if isinstance(result, int) else 0

