"""Command-line interface: JSON output, config handling, exit codes."""

import json

import pytest
from click.testing import CliRunner

from equivibe.cli import main

from conftest import REFERENCE_EIGENVALUES


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def reference_file(tmp_path):
    entries = [
        {"j": j, "tag": tag, "mu": mu} for (j, tag), mu in REFERENCE_EIGENVALUES.items()
    ]
    path = tmp_path / "reference.json"
    path.write_text(json.dumps(entries))
    return str(path)


def invoke(runner, args):
    result = runner.invoke(main, args, catch_exceptions=False)
    return result


def test_equilibrium_json(runner):
    result = invoke(runner, ["equilibrium"])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["n"] == 6
    assert payload["gradient_norm"] <= 1e-9
    assert len(payload["u0"]) == 6
    # determinism
    again = invoke(runner, ["equilibrium"])
    assert again.output == result.output


def test_equilibrium_harmonic_ring(runner):
    result = invoke(runner, ["equilibrium", "--A", "0", "--B", "0", "--sigma", "0"])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["r0"] == pytest.approx(1.0)


def test_spectrum_payload(runner):
    result = invoke(runner, ["spectrum"])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    labels = [(e["j"], e["tag"]) for e in payload["eigenvalues"]]
    assert labels == [(0, ""), (1, ""), (2, "+"), (2, "-"), (3, "+"), (3, "-")]
    assert payload["diagnostics"]["closed_vs_oracle_rel_err"] <= 1e-8


def test_critical_set_with_reference(runner, reference_file):
    result = invoke(
        runner, ["critical-set", "--reference", reference_file, "--l-max", "6"]
    )
    assert result.exit_code == 0
    payload = json.loads(result.output)
    rows = payload["critical_set"]
    assert rows[0]["j"] == 1 and rows[0]["l"] == 1
    assert rows[0]["lambda"] == pytest.approx(0.15248819, abs=1e-6)
    assert rows[0]["limit_period"] == pytest.approx(0.95811155, abs=1e-6)
    assert len(rows) == 24  # four positive eigenvalue lines times l_max


def test_invariants_with_reference(runner, reference_file):
    result = invoke(
        runner,
        [
            "invariants",
            "--reference",
            reference_file,
            "--crossing",
            "2,1,+",
            "--l-max",
            "1",
        ],
    )
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["mode"] == "paper_style"
    (entry,) = payload["invariants"]
    assert entry["j"] == 2 and entry["l"] == 1 and entry["sign"] == "+"
    assert len(entry["expansion"]) == 15
    coeffs = {(t["family"], t["param"]): t["coefficient"] for t in entry["expansion"]}
    assert coeffs[(30, 1)] == 2
    assert entry["predicted_branches"] == 3


def test_invariants_unknown_crossing_fails(runner, reference_file):
    result = runner.invoke(
        main,
        ["invariants", "--reference", reference_file, "--crossing", "9,1", "--l-max", "1"],
    )
    assert result.exit_code == 2


def test_bad_params_exit_code(runner):
    result = runner.invoke(main, ["equilibrium", "--n", "2"])
    assert result.exit_code == 2
    err = json.loads(result.output or result.stderr)
    assert err["type"] == "DomainError"


def test_config_file_merging(runner, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"a": 0.0, "b": 0.0, "sigma": 0.0}))
    result = invoke(runner, ["equilibrium", "--config", str(cfg)])
    payload = json.loads(result.output)
    assert payload["r0"] == pytest.approx(1.0)
    # explicit flags win over the config file
    result = invoke(
        runner, ["equilibrium", "--config", str(cfg), "--B", "350", "--A", "0.2",
                 "--sigma", "0.25"]
    )
    payload = json.loads(result.output)
    assert payload["r0"] > 1.5


def test_simulate_without_shooting(runner, tmp_path):
    csv_path = tmp_path / "traj.csv"
    svg_path = tmp_path / "traj.svg"
    result = invoke(
        runner,
        [
            "simulate",
            "--mode",
            "1,1",
            "--no-shoot",
            "--periods",
            "0.2",
            "--eps",
            "0.01",
            "--csv",
            str(csv_path),
            "--svg",
            str(svg_path),
        ],
    )
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["mode"] == {"j": 1, "l": 1, "sign": ""}
    assert not payload["collided"]
    header = csv_path.read_text().splitlines()[0]
    assert header.split(",")[:3] == ["t", "x_0", "y_0"]
    assert svg_path.read_text().startswith("<svg")


def test_output_file_option(runner, tmp_path):
    out = tmp_path / "eq.json"
    result = invoke(runner, ["equilibrium", "--output", str(out)])
    assert result.exit_code == 0
    payload = json.loads(out.read_text())
    assert payload["n"] == 6
