"""Contains tests for the 'bdiv' command-line interface provided by the interfaces package."""

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from banach_diversities.embeddings import ThreePointDiversity, hexagon_witness
from banach_diversities.interfaces import cli, main, load_point_set, roundtrip_verify


@pytest.fixture
def runner() -> CliRunner:
    """Creates a CliRunner instance for invoking the CLI."""
    return CliRunner()


@pytest.fixture
def square_files(tmp_path) -> tuple[Path, Path]:
    """Creates the point set and body documents of three points in the maximum norm unit ball."""
    points_path = tmp_path / "points.json"
    points_path.write_text(
        json.dumps({"dim": 2, "points": [[0.0, 0.0], [2.0, 0.0], [0.0, 4.0]], "labels": ["a", "b", "c"]})
    )
    body_path = tmp_path / "body.json"
    body_path.write_text(json.dumps({"dim": 2, "generators": [[1.0, 1.0], [1.0, -1.0]]}))
    return points_path, body_path


def _document(result) -> dict:
    """Parses the JSON document printed by a CLI invocation."""
    return json.loads(result.stdout)


def _three_point_arguments(d12: float, d13: float, d23: float, d123: float | None = None) -> list[str]:
    """Builds the value options of the embed3 commands."""
    arguments = ["--d12", str(d12), "--d13", str(d13), "--d23", str(d23)]
    if d123 is not None:
        arguments += ["--d123", str(d123)]
    return arguments


def test_load_point_set(square_files, tmp_path) -> None:
    """Verifies that point set documents are loaded with their labels and that default labels are generated."""
    points, labels = load_point_set(path=square_files[0])
    assert points.shape == (3, 2)
    assert labels == ("a", "b", "c")

    unlabeled = tmp_path / "unlabeled.json"
    unlabeled.write_text(json.dumps({"points": [[0.0], [1.0]]}))
    _, default_labels = load_point_set(path=unlabeled)
    assert default_labels == ("p1", "p2")

    mismatched = tmp_path / "mismatched.json"
    mismatched.write_text(json.dumps({"dim": 3, "points": [[0.0, 1.0]]}))
    with pytest.raises(ValueError):
        load_point_set(path=mismatched)


def test_circumradius_command(runner, square_files) -> None:
    """Verifies that the circumradius command reports the radius, the contacts, and the certificate."""
    points_path, body_path = square_files
    result = runner.invoke(cli, ["circumradius", "-p", str(points_path), "-b", str(body_path), "--certificate"])

    assert result.exit_code == 0
    document = _document(result)
    assert document["radius"] == pytest.approx(2.0, abs=1e-9)
    assert {"a", "c"} <= {contact["label"] for contact in document["contacts"]}
    assert document["certificate"] is not None
    assert document["config"]["lp_tolerance"] == 1e-6


@pytest.mark.parametrize(
    "d123, exit_code, banach",
    [
        (2.2, 0, True),
        (2.5, 2, False),
    ],
)
def test_embed3_decide(runner, d123, exit_code, banach) -> None:
    """Verifies that the decide command exits with 0 for Banach-embeddable values and with 2 otherwise."""
    result = runner.invoke(cli, ["embed3", "decide", *_three_point_arguments(2.0, 2.0, 1.0, d123)])

    assert result.exit_code == exit_code
    document = _document(result)
    assert document["banach"] is banach
    assert document["minkowski"] is True
    assert document["decision"]["banach_interval"][1] == pytest.approx(16.0 / 7.0)


def test_embed3_witness_and_verify(runner, tmp_path) -> None:
    """Verifies that a saved witness passes the round-trip verification."""
    witness_path = tmp_path / "witness" / "body.json"
    result = runner.invoke(
        cli,
        ["embed3", "witness", *_three_point_arguments(1.0, 2.0, 2.0), "--target", "2.1", "--out", str(witness_path)],
    )

    assert result.exit_code == 0
    assert witness_path.exists()
    assert _document(result)["witness"]["measured"] == pytest.approx(2.1, abs=1e-6)

    result = runner.invoke(cli, ["embed3", "verify", str(witness_path), *_three_point_arguments(1.0, 2.0, 2.0, 2.1)])
    assert result.exit_code == 0
    assert _document(result)["passed"] is True


def test_embed3_verify_detects_wrong_body(runner, tmp_path) -> None:
    """Verifies that a scaled witness body fails the round-trip verification."""
    witness_path = tmp_path / "witness.json"
    arguments = ["--out", str(witness_path), "embed3", "witness", *_three_point_arguments(2.0, 2.0, 1.0)]
    result = runner.invoke(cli, arguments)
    assert result.exit_code == 0

    # Doubling the body halves every induced value.
    document = json.loads(witness_path.read_text())
    document["generators"] = [[2.0 * value for value in row] for row in document["generators"]]
    scaled_path = tmp_path / "scaled.json"
    scaled_path.write_text(json.dumps(document))

    result = runner.invoke(
        cli, ["embed3", "verify", str(scaled_path), *_three_point_arguments(2.0, 2.0, 1.0, 16.0 / 7.0)]
    )
    assert result.exit_code == 2
    assert _document(result)["passed"] is False


def test_roundtrip_verify_without_stored_points(tmp_path) -> None:
    """Verifies that bare body documents are verified against the reference triangle of the targets."""
    body_path = tmp_path / "hexagon.json"
    body = hexagon_witness(ThreePointDiversity.from_values(2.0, 2.0, 1.0, 2.0)).body
    body_path.write_text(json.dumps(body.to_dict()))

    report = roundtrip_verify(witness_path=body_path, targets=(2.0, 2.0, 1.0, 16.0 / 7.0))
    assert report.passed
    assert [entry.name for entry in report.entries] == ["d12", "d13", "d23", "d123"]


def test_embed3_witness_rejects_target_outside_interval(runner) -> None:
    """Verifies that the witness command exits with 2 for a target above the Banach interval."""
    result = runner.invoke(cli, ["embed3", "witness", *_three_point_arguments(2.0, 2.0, 1.0), "--target", "2.9"])

    assert result.exit_code == 2
    assert _document(result)["banach"] is False


def test_check_diversity_command(runner, tmp_path) -> None:
    """Verifies that the check-diversity command exits with 0 for a diversity and with 2 for an invalid table."""
    valid = tmp_path / "valid.json"
    valid.write_text(json.dumps({"ground": ["a", "b"], "values": {"a": 0.0, "b": 0.0, "a,b": 1.0}}))
    invalid = tmp_path / "invalid.json"
    invalid.write_text(
        json.dumps(
            {
                "ground": ["a", "b", "c"],
                "values": {"a": 0.0, "b": 0.0, "c": 0.0, "a,b": 1.0, "a,c": 1.0, "b,c": 1.0, "a,b,c": 5.0},
            }
        )
    )

    result = runner.invoke(cli, ["check-diversity", str(valid)])
    assert result.exit_code == 0
    assert _document(result)["ok"] is True

    result = runner.invoke(cli, ["check-diversity", str(invalid)])
    assert result.exit_code == 2
    document = _document(result)
    assert document["ok"] is False
    assert document["report"]["violation_count"] > 0


def test_corrupt_input_reports_error(runner, tmp_path) -> None:
    """Verifies that unreadable input produces an error document and exit code 1."""
    corrupt = tmp_path / "corrupt.json"
    corrupt.write_text("{not json")

    result = runner.invoke(cli, ["check-diversity", str(corrupt)])
    assert result.exit_code == 1
    document = _document(result)
    assert document["type"] == "JSONDecodeError"
    assert "error" in document


def test_embed4_bound_command(runner) -> None:
    """Verifies that the bound command reports an undefined printed bound and a solvable system for equal radii."""
    arguments = [argument for name in ("r12", "r13", "r14", "r23", "r24", "r34") for argument in (f"--{name}", "1")]
    result = runner.invoke(cli, ["embed4", "bound", *arguments])

    assert result.exit_code == 0
    document = _document(result)
    assert document["bound"] is None
    assert document["coefficients_valid"] is True
    assert document["system"]["scale"] == pytest.approx(2.0 / 3.0)
    assert document["coefficient_a"]["printed"] == 3.0
    assert document["trial"]["verdict"] == "bound_undefined"
    assert document["triple_bounds"]["1,2,3"][1] == pytest.approx(4.0 / 3.0)


def test_embed4_bound_rejects_infeasible_radii(runner) -> None:
    """Verifies that infeasible radii produce an error document and exit code 1."""
    values = ("5", "1", "1", "1", "1", "1")
    names = ("r12", "r13", "r14", "r23", "r24", "r34")
    arguments = [argument for name, value in zip(names, values, strict=True) for argument in (f"--{name}", value)]
    result = runner.invoke(cli, ["embed4", "bound", *arguments])

    assert result.exit_code == 1
    assert _document(result)["type"] == "PreconditionViolatedError"


def test_embed4_sample_command(runner, tmp_path) -> None:
    """Verifies that the sample command writes one JSON line per trial and reports verdict counts."""
    output = tmp_path / "trials.jsonl"
    arguments = ["embed4", "sample", "--count", "2", "--workers", "1", "--seed", "3", "--out", str(output)]
    result = runner.invoke(cli, arguments)

    assert result.exit_code == 0
    summary = _document(result)["summary"]
    assert summary["count"] == 2
    assert summary["seed"] == 3
    assert len(output.read_text().splitlines()) == 2


def test_probe_dim3_command(runner) -> None:
    """Verifies that the probe command reports no counterexamples on a small run."""
    result = runner.invoke(cli, ["--seed", "5", "probe-dim3", "--trials", "3"])

    assert result.exit_code == 0
    document = _document(result)
    assert document["ok"] is True
    assert document["report"]["seed"] == 5


def test_config_command_round_trip(runner, tmp_path) -> None:
    """Verifies that a saved configuration is applied by later invocations."""
    config_path = tmp_path / "run.yaml"
    result = runner.invoke(cli, ["--decision-slack", "1e-6", "--tolerance", "1e-4", "config", "-o", str(config_path)])
    assert result.exit_code == 0
    assert config_path.exists()

    arguments = ["-c", str(config_path), "embed3", "decide", *_three_point_arguments(2.0, 2.0, 1.0, 2.2)]
    result = runner.invoke(cli, arguments)
    assert result.exit_code == 0
    config = _document(result)["config"]
    assert config["decision_slack"] == 1e-6
    assert config["lp_tolerance"] == 1e-4


def test_invalid_configuration_reports_error(runner) -> None:
    """Verifies that invalid global options produce an error document and exit code 1."""
    result = runner.invoke(cli, ["--tolerance", "-1", "embed3", "decide", *_three_point_arguments(2.0, 2.0, 1.0, 2.2)])

    assert result.exit_code == 1
    assert _document(result)["type"] == "ValueError"


def test_main_exit_codes() -> None:
    """Verifies that main() returns 0, 2, and 1 for positive decisions, negative decisions, and usage errors."""
    assert main(["embed3", "decide", *_three_point_arguments(2.0, 2.0, 1.0, 2.2)]) == 0
    assert main(["embed3", "decide", *_three_point_arguments(2.0, 2.0, 1.0, 2.5)]) == 2
    assert main(["embed3", "decide", *_three_point_arguments(2.0, 2.0, 1.0)]) == 1
